//! Lie-algebra valued connections on a CDGA, their curvature, the
//! essentially-rank-one locus, and holonomy Lie algebra presentations.
//!
//! A connection is an element of `A^1 (x) g`, stored as its coefficient
//! matrix: entry `(j, k)` is the coefficient of `(degree-1 basis j) (x)
//! (Lie basis k)`. Under the canonical identification `A^1 (x) g =
//! Hom(A_1, g)`, the same data read column-wise is a linear map from the
//! dual of `A^1` to `g`; [`LieMapCandidate`] is that transposed view.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cdga::Cdga;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{format_rat, Mat, Rat};

/// Element of `A^1 (x) g` tied to its algebra pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    pub cdga: Arc<Cdga>,
    pub lie: Arc<LieAlgebra>,
    coeffs: Mat,
}

impl Connection {
    pub fn new(cdga: Arc<Cdga>, lie: Arc<LieAlgebra>, coeffs: Mat) -> Result<Connection> {
        if coeffs.rows() != cdga.dim(1) || coeffs.cols() != lie.dim() {
            return Err(Error::ShapeMismatch(format!(
                "connection coefficients must be {}x{}, got {}x{}",
                cdga.dim(1),
                lie.dim(),
                coeffs.rows(),
                coeffs.cols()
            )));
        }
        Ok(Connection { cdga, lie, coeffs })
    }

    pub fn zero(cdga: Arc<Cdga>, lie: Arc<LieAlgebra>) -> Connection {
        let coeffs = Mat::zeros(cdga.dim(1), lie.dim());
        Connection { cdga, lie, coeffs }
    }

    /// The connection `eta (x) g` for a degree-1 element and a Lie element.
    pub fn rank_one(
        cdga: Arc<Cdga>,
        lie: Arc<LieAlgebra>,
        eta: &[Rat],
        g: &[Rat],
    ) -> Result<Connection> {
        let coeffs = Mat::from_fn(cdga.dim(1), lie.dim(), |r, c| &eta[r] * &g[c]);
        Connection::new(cdga, lie, coeffs)
    }

    pub fn coeffs(&self) -> &Mat {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// The component 1-form of the `k`-th Lie basis element.
    pub fn component_form(&self, k: usize) -> Vec<Rat> {
        self.coeffs.col(k)
    }

    /// Curvature `d omega + [omega, omega]/2` expanded in the degree-2 and
    /// Lie bases: entry `(m, n)` is the coefficient of
    /// `(degree-2 basis m) (x) (Lie basis n)`.
    pub fn curvature(&self) -> Mat {
        let a = &self.cdga;
        let g = &self.lie;
        let mut out = Mat::zeros(a.dim(2), g.dim());
        // sum_k (d eta_k) (x) x_k
        for k in 0..g.dim() {
            let d_eta = a.d_elem(1, &self.component_form(k));
            for (m, c) in d_eta.iter().enumerate() {
                if !c.is_zero() {
                    let v = out.at(m, k) + c;
                    *out.at_mut(m, k) = v;
                }
            }
        }
        // sum_{k<l} (eta_k eta_l) (x) [x_k, x_l]
        for k in 0..g.dim() {
            for l in k + 1..g.dim() {
                let ek = vec_basis(g.dim(), k);
                let el = vec_basis(g.dim(), l);
                let br = g.bracket_vec(&ek, &el);
                if br.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let prod = a.prod_elem(1, 1, &self.component_form(k), &self.component_form(l));
                for (m, pm) in prod.iter().enumerate() {
                    if pm.is_zero() {
                        continue;
                    }
                    for (n, bn) in br.iter().enumerate() {
                        if bn.is_zero() {
                            continue;
                        }
                        let v = out.at(m, n) + &(pm * bn);
                        *out.at_mut(m, n) = v;
                    }
                }
            }
        }
        out
    }

    /// Maurer-Cartan test: vanishing curvature.
    pub fn is_flat(&self) -> bool {
        self.curvature().is_zero()
    }

    /// True iff the coefficients factor as `eta (x) g` for a *closed* 1-form
    /// `eta`. Operationally: rank at most one, and the degree-1 factor lies
    /// in `ker d^1`.
    pub fn is_essentially_rank_one(&self) -> bool {
        match self.rank_one_factor() {
            Some((eta, _)) => self.cdga.d_elem(1, &eta).iter().all(|c| c.is_zero()),
            None => false,
        }
    }

    /// Factors rank-at-most-one coefficients as `eta (x) g`. Returns `None`
    /// when the rank is 2 or more. The zero connection factors as
    /// `(0, 0)`.
    pub fn rank_one_factor(&self) -> Option<(Vec<Rat>, Vec<Rat>)> {
        if self.coeffs.is_zero() {
            return Some((
                vec![Rat::zero(); self.coeffs.rows()],
                vec![Rat::zero(); self.coeffs.cols()],
            ));
        }
        if self.coeffs.rank() > 1 {
            return None;
        }
        let pivot_col = (0..self.coeffs.cols())
            .find(|&c| self.coeffs.col(c).iter().any(|x| !x.is_zero()))
            .expect("nonzero matrix has a nonzero column");
        let eta = self.coeffs.col(pivot_col);
        let pivot_row = eta.iter().position(|x| !x.is_zero()).expect("nonzero");
        let g: Vec<Rat> = (0..self.coeffs.cols())
            .map(|c| self.coeffs.at(pivot_row, c) / &eta[pivot_row])
            .collect();
        Some((eta, g))
    }

    /// The transposed view as a candidate Lie map on the holonomy
    /// generators: column `j` is the value on the generator dual to the
    /// `j`-th degree-1 basis element.
    pub fn as_lie_map(&self) -> LieMapCandidate {
        LieMapCandidate {
            values: self.coeffs.transpose(),
        }
    }
}

fn vec_basis(dim: usize, k: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[k] = Rat::one();
    v
}

/// Candidate morphism from a holonomy Lie algebra to `g`, by generator
/// values: `values` has one column per generator, each a `g`-coefficient
/// vector.
#[derive(Clone, Debug, PartialEq)]
pub struct LieMapCandidate {
    pub values: Mat,
}

impl LieMapCandidate {
    pub fn value(&self, generator: usize) -> Vec<Rat> {
        self.values.col(generator)
    }

    pub fn generators(&self) -> usize {
        self.values.cols()
    }

    /// Membership in `Hom^1`: image of dimension at most one.
    pub fn has_rank_at_most_one_image(&self) -> bool {
        self.values.rank() <= 1
    }

    /// The corresponding connection coefficients.
    pub fn as_connection(&self, cdga: Arc<Cdga>, lie: Arc<LieAlgebra>) -> Result<Connection> {
        Connection::new(cdga, lie, self.values.transpose())
    }
}

/// Finitely presented Lie algebra with one generator per degree-1 basis
/// element and one relation per degree-2 basis element. Each relation is
/// `linear + quadratic = 0`, with the linear part a row of [`rel_linear`]
/// and the quadratic part an antisymmetric generator-pair matrix.
///
/// [`rel_linear`]: HolonomyPresentation::rel_linear
#[derive(Clone, Debug, PartialEq)]
pub struct HolonomyPresentation {
    pub gens: usize,
    pub labels: Vec<String>,
    /// relations x generators; row `m` is the dualized differential.
    pub rel_linear: Mat,
    /// One antisymmetric gens x gens matrix per relation; entry `(j, k)`
    /// with `j < k` is the coefficient of `[x_j, x_k]`.
    pub rel_quadratic: Vec<Mat>,
}

impl HolonomyPresentation {
    pub fn relations(&self) -> usize {
        self.rel_linear.rows()
    }

    /// True when every relation has zero linear part (the graded case).
    pub fn is_quadratic(&self) -> bool {
        self.rel_linear.is_zero()
    }

    /// Evaluates every relation on the candidate values and tests for zero:
    /// `phi(linear) + sum_{j<k} q_jk [phi(x_j), phi(x_k)] = 0` in `g`.
    pub fn kills_relations(&self, lie: &LieAlgebra, phi: &LieMapCandidate) -> bool {
        assert_eq!(phi.values.cols(), self.gens, "generator count mismatch");
        assert_eq!(phi.values.rows(), lie.dim(), "target dimension mismatch");
        for m in 0..self.relations() {
            let mut acc = vec![Rat::zero(); lie.dim()];
            for j in 0..self.gens {
                let c = self.rel_linear.at(m, j);
                if c.is_zero() {
                    continue;
                }
                for (out, v) in acc.iter_mut().zip(phi.value(j)) {
                    *out += &v * c;
                }
            }
            let quad = &self.rel_quadratic[m];
            for j in 0..self.gens {
                for k in j + 1..self.gens {
                    let c = quad.at(j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let br = lie.bracket_vec(&phi.value(j), &phi.value(k));
                    for (out, v) in acc.iter_mut().zip(br) {
                        *out += &v * c;
                    }
                }
            }
            if acc.iter().any(|c| !c.is_zero()) {
                return false;
            }
        }
        true
    }

    /// For a presentation with two generators and one relation whose
    /// bracket coefficient is nonzero, the quotient is two-dimensional,
    /// spanned by the generator images; returns its structure constants
    /// as a Lie algebra on the generator basis.
    pub fn two_dim_quotient(&self) -> Option<LieAlgebra> {
        if self.gens != 2 || self.relations() != 1 {
            return None;
        }
        let q = self.rel_quadratic[0].at(0, 1).clone();
        if q.is_zero() {
            return None;
        }
        // q [x,y] + alpha x + beta y = 0  =>  [x,y] = -(alpha/q) x - (beta/q) y
        let alpha = self.rel_linear.at(0, 0).clone();
        let beta = self.rel_linear.at(0, 1).clone();
        let c = -(alpha / &q);
        let d = -(beta / &q);
        let mut bracket = vec![vec![vec![Rat::zero(); 2]; 2]; 2];
        bracket[0][1] = vec![c.clone(), d.clone()];
        bracket[1][0] = vec![-c, -d];
        LieAlgebra::new(2, bracket, self.labels.clone(), "quotient").ok()
    }
}

impl std::fmt::Display for HolonomyPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "gens: {}", self.labels.join(", "))?;
        if self.relations() == 0 {
            writeln!(f, "rels: none")?;
            return Ok(());
        }
        for m in 0..self.relations() {
            let mut terms: Vec<String> = Vec::new();
            let quad = &self.rel_quadratic[m];
            for j in 0..self.gens {
                for k in j + 1..self.gens {
                    let c = quad.at(j, k);
                    if !c.is_zero() {
                        terms.push(term(c, &format!("[{},{}]", self.labels[j], self.labels[k])));
                    }
                }
            }
            for j in 0..self.gens {
                let c = self.rel_linear.at(m, j);
                if !c.is_zero() {
                    terms.push(term(c, &self.labels[j]));
                }
            }
            let body = if terms.is_empty() {
                "0".to_string()
            } else {
                join_terms(&terms)
            };
            writeln!(f, "rel {m}: {body} = 0")?;
        }
        Ok(())
    }
}

fn term(c: &Rat, sym: &str) -> String {
    if c == &Rat::one() {
        sym.to_string()
    } else if c == &(-Rat::one()) {
        format!("-{sym}")
    } else {
        format!("{}*{sym}", format_rat(c))
    }
}

fn join_terms(terms: &[String]) -> String {
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            s.push_str(t);
        } else if let Some(stripped) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(stripped);
        } else {
            s.push_str(" + ");
            s.push_str(t);
        }
    }
    s
}

/// Holonomy Lie algebra presentation of a connected CDGA: generators dual
/// to the degree-1 basis, one relation per degree-2 basis element, with
/// linear part the dualized differential and quadratic part the dualized
/// multiplication.
///
/// Dualization convention: the pairing between a wedge `a_j ^ a_k` (j < k)
/// and its dual basis element is 1, and the linear part is the plain
/// transpose of `d^1`, so relation `m` reads off row `m` of `d^1` and the
/// coefficients of basis `m` in the degree-1 products.
pub fn holonomy_presentation(a: &Arc<Cdga>) -> HolonomyPresentation {
    assert!(a.q() >= 1, "presentation needs degrees 1 and 2");
    assert_eq!(a.dim(0), 1, "presentation requires a connected algebra");
    let gens = a.dim(1);
    let rels = a.dim(2);
    let rel_linear = a.d(1).clone();
    let mut rel_quadratic = Vec::with_capacity(rels);
    for m in 0..rels {
        let mut quad = Mat::zeros(gens, gens);
        for j in 0..gens {
            for k in j + 1..gens {
                let prod = a.prod_basis(1, 1, j, k);
                if !prod[m].is_zero() {
                    *quad.at_mut(j, k) = prod[m].clone();
                    *quad.at_mut(k, j) = -prod[m].clone();
                }
            }
        }
        rel_quadratic.push(quad);
    }
    HolonomyPresentation {
        gens,
        labels: a.labels()[1].clone(),
        rel_linear,
        rel_quadratic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lie;
    use crate::linalg::{rat, rint};

    fn solvable() -> Arc<Cdga> {
        Arc::new(fixtures::solvable_model())
    }

    #[test]
    fn zero_connection_has_zero_curvature() {
        let a = solvable();
        let g = lie::sl2().lie;
        let omega = Connection::zero(a, g);
        assert!(omega.curvature().is_zero());
        assert!(omega.is_flat());
    }

    #[test]
    fn curvature_of_non_closed_component() {
        // omega = y (x) t on the solvable model with abelian(1):
        // curvature = dy (x) t = -(x^y) (x) t != 0
        let a = solvable();
        let g = lie::abelian(1).lie;
        let omega = Connection::new(
            a.clone(),
            g,
            fixtures::single_entry_coeffs(2, 1, 1, 0, rint(1)),
        )
        .unwrap();
        let curv = omega.curvature();
        assert_eq!(curv.at(0, 0), &rint(-1));
        assert!(!omega.is_flat());
    }

    #[test]
    fn zero_differential_abelian_target_always_flat() {
        let a = Arc::new(fixtures::exterior(&["e1", "e2"], 2));
        let g = lie::abelian(2).lie;
        let omega = Connection::new(
            a,
            g,
            Mat::from_rows(vec![vec![rat(1, 2), rint(3)], vec![rint(-2), rat(5, 7)]]),
        )
        .unwrap();
        assert!(omega.curvature().is_zero());
    }

    #[test]
    fn flat_line_on_solvable_model() {
        // omega = t * (x (x) 1) is flat for all t; a nonzero y-component
        // breaks flatness
        let a = solvable();
        let g = lie::abelian(1).lie;
        for t in [-3i64, 0, 1, 2] {
            let omega = Connection::new(
                a.clone(),
                g.clone(),
                fixtures::single_entry_coeffs(2, 1, 0, 0, rint(t)),
            )
            .unwrap();
            assert!(omega.is_flat());
        }
        let mut coeffs = Mat::zeros(2, 1);
        *coeffs.at_mut(0, 0) = rint(1);
        *coeffs.at_mut(1, 0) = rint(1);
        let omega = Connection::new(a, g, coeffs).unwrap();
        assert!(!omega.is_flat());
    }

    #[test]
    fn single_generator_connections_are_flat() {
        // e.e = 0, so any value matrix on a one-generator exterior algebra
        // gives a flat connection
        let a = Arc::new(fixtures::exterior(&["e"], 1));
        let g = lie::gl2().lie;
        let omega = Connection::new(
            a,
            g,
            Mat::from_rows(vec![vec![rint(1), rint(2), rint(-1), rint(4)]]),
        )
        .unwrap();
        assert!(omega.is_flat());
    }

    #[test]
    fn essentially_rank_one_examples() {
        let a = solvable();
        let sl2 = lie::sl2().lie;

        let zero = Connection::zero(a.clone(), sl2.clone());
        assert!(zero.is_essentially_rank_one());

        // x (x) h: closed factor, rank one
        let omega = Connection::rank_one(
            a.clone(),
            sl2.clone(),
            &[rint(1), rint(0)],
            &[rint(0), rint(0), rint(1)],
        )
        .unwrap();
        assert!(omega.is_essentially_rank_one());
        assert!(omega.is_flat());

        // x (x) e + y (x) f has rank 2
        let mut coeffs = Mat::zeros(2, 3);
        *coeffs.at_mut(0, 0) = rint(1);
        *coeffs.at_mut(1, 1) = rint(1);
        let omega = Connection::new(a.clone(), sl2, coeffs).unwrap();
        assert!(!omega.is_essentially_rank_one());

        // y (x) h: rank one but dy != 0
        let ab = lie::abelian(1).lie;
        let omega = Connection::rank_one(a, ab, &[rint(0), rint(1)], &[rint(1)]).unwrap();
        assert!(!omega.is_essentially_rank_one());
    }

    #[test]
    fn rank_one_closed_factor_is_always_flat() {
        let fixtures: Vec<Arc<Cdga>> = vec![
            Arc::new(fixtures::exterior(&["e1", "e2"], 2)),
            solvable(),
        ];
        for a in fixtures {
            for entry in [lie::sl2(), lie::sol2(), lie::gl2()] {
                for eta in a.closed_one_forms() {
                    let g: Vec<Rat> = (0..entry.lie.dim()).map(|k| rint(k as i64 + 1)).collect();
                    let omega =
                        Connection::rank_one(a.clone(), entry.lie.clone(), &eta, &g).unwrap();
                    assert!(omega.is_flat());
                    assert!(omega.is_essentially_rank_one());
                }
            }
        }
    }

    #[test]
    fn presentation_single_generator_is_free() {
        let a = Arc::new(fixtures::exterior(&["e"], 1));
        let p = holonomy_presentation(&a);
        assert_eq!(p.gens, 1);
        assert_eq!(p.relations(), 0);
    }

    #[test]
    fn presentation_of_solvable_model() {
        let p = holonomy_presentation(&solvable());
        assert_eq!(p.gens, 2);
        assert_eq!(p.relations(), 1);
        // relation: [x,y] - y = 0, i.e. [x,y] = y
        assert_eq!(p.rel_quadratic[0].at(0, 1), &rint(1));
        assert_eq!(p.rel_linear.at(0, 0), &rint(0));
        assert_eq!(p.rel_linear.at(0, 1), &rint(-1));
        let quot = p.two_dim_quotient().unwrap();
        assert_eq!(quot.bracket_basis(0, 1), &[rint(0), rint(1)]);
        assert!(quot.validate().is_pass());
    }

    #[test]
    fn presentation_zero_differential_two_generators() {
        let a = Arc::new(fixtures::exterior(&["e1", "e2"], 2));
        let p = holonomy_presentation(&a);
        assert_eq!(p.gens, 2);
        assert_eq!(p.relations(), 1);
        assert!(p.is_quadratic());
        assert_eq!(p.rel_quadratic[0].at(0, 1), &rint(1));
    }

    #[test]
    fn kills_relations_examples() {
        let p = holonomy_presentation(&solvable());
        let sol2 = lie::sol2().lie;

        // phi(x) = a, phi(y) = b satisfies [a,b] - b = 0
        let phi = LieMapCandidate {
            values: Mat::from_i64(&[&[1, 0], &[0, 1]]),
        };
        assert!(p.kills_relations(&sol2, &phi));

        // abelian target forces phi(y) = 0
        let ab = lie::abelian(1).lie;
        let phi = LieMapCandidate {
            values: Mat::from_i64(&[&[2, 1]]),
        };
        assert!(!p.kills_relations(&ab, &phi));
        let phi = LieMapCandidate {
            values: Mat::from_i64(&[&[2, 0]]),
        };
        assert!(p.kills_relations(&ab, &phi));

        // no relations: everything is a morphism
        let free = holonomy_presentation(&Arc::new(fixtures::exterior(&["e"], 1)));
        let phi = LieMapCandidate {
            values: Mat::from_i64(&[&[5]]),
        };
        assert!(free.kills_relations(&ab, &phi));
    }

    #[test]
    fn rank_at_most_one_image_examples() {
        let zero = LieMapCandidate {
            values: Mat::zeros(3, 2),
        };
        assert!(zero.has_rank_at_most_one_image());

        let colinear = LieMapCandidate {
            values: Mat::from_i64(&[&[1, 2], &[2, 4], &[3, 6]]),
        };
        assert!(colinear.has_rank_at_most_one_image());

        let rank2 = LieMapCandidate {
            values: Mat::from_i64(&[&[1, 0], &[0, 1], &[0, 0]]),
        };
        assert!(!rank2.has_rank_at_most_one_image());
    }

    #[test]
    fn presentation_display_format() {
        let p = holonomy_presentation(&solvable());
        let text = format!("{p}");
        assert!(text.contains("gens: x, y"));
        assert!(text.contains("[x,y] - y = 0"));
    }

    /// Flatness of a connection is equivalent to its transposed map killing
    /// the presentation relations, checked on random candidates.
    #[test]
    fn flatness_matches_relation_killing() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let algebras: Vec<Arc<Cdga>> = vec![
            solvable(),
            Arc::new(fixtures::exterior(&["e1", "e2"], 2)),
        ];
        for a in &algebras {
            let p = holonomy_presentation(a);
            for entry in [lie::abelian(1), lie::sl2(), lie::sol2()] {
                let mut flats = 0usize;
                for _ in 0..200 {
                    let coeffs = Mat::from_fn(a.dim(1), entry.lie.dim(), |_, _| {
                        rint(rng.gen_range(-2..=2))
                    });
                    let omega = Connection::new(a.clone(), entry.lie.clone(), coeffs).unwrap();
                    let kills = p.kills_relations(&entry.lie, &omega.as_lie_map());
                    assert_eq!(omega.is_flat(), kills);
                    if kills {
                        flats += 1;
                    }
                }
                assert!(flats > 0, "never sampled a flat point");
            }
        }
    }
}
