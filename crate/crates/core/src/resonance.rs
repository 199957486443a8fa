//! Twisted (Aomoto) complexes and resonance membership.
//!
//! Given a connected CDGA `A`, a representation `theta: g -> gl(V)` and a
//! flat connection `omega`, the covariant derivative
//!
//! ```text
//! d_omega(alpha (x) v) = d alpha (x) v + sum_j eta_j alpha (x) theta(x_j)(v)
//! ```
//!
//! turns `A (x) V` into a cochain complex. Twisted Betti numbers are the
//! cohomology dimensions of that complex; a point is in the degree-`i`,
//! depth-`m` resonance locus when the degree-`i` twisted Betti number is at
//! least `m`.
//!
//! The same loci can be computed on the holonomy side: degree-0 and
//! degree-1 cohomology of a finitely presented Lie algebra acting on `V`
//! through a morphism, by pure generator/relation linear algebra. The two
//! routes are independent and are cross-checked by the verification
//! harness.
//!
//! Basis convention for `A^i (x) V`: index `b * dim V + v` for basis `b` of
//! `A^i` and basis `v` of `V` (algebra-major).

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cdga::{Cdga, CochainComplex};
use crate::connection::{Connection, HolonomyPresentation, LieMapCandidate};
use crate::error::{Error, Result};
use crate::lie::Representation;
use crate::linalg::{Mat, Rat};

/// Degree/depth pair for a resonance membership query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResonanceQuery {
    pub degree: usize,
    pub depth: usize,
}

/// The cochain complex `(A (x) V, d_omega)` together with its provenance.
#[derive(Clone, Debug)]
pub struct AomotoComplex {
    complex: CochainComplex,
    pub cdga: Arc<Cdga>,
    pub rep: Representation,
    pub connection: Connection,
}

impl AomotoComplex {
    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn delta(&self, i: usize) -> &Mat {
        self.complex.delta(i)
    }

    /// Twisted Betti number in degree `i <= q`.
    pub fn betti(&self, i: usize) -> Result<usize> {
        if i > self.cdga.q() {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                max: self.cdga.q(),
            });
        }
        self.complex.cohomology_dim(i)
    }
}

fn check_compatible(a: &Arc<Cdga>, rep: &Representation, omega: &Connection) -> Result<()> {
    if omega.cdga.as_ref() != a.as_ref() {
        return Err(Error::ShapeMismatch(
            "connection lives on a different algebra".into(),
        ));
    }
    if omega.lie.as_ref() != rep.lie.as_ref() {
        return Err(Error::ShapeMismatch(
            "connection and representation target different Lie algebras".into(),
        ));
    }
    Ok(())
}

/// Raw covariant-derivative block matrices for all stored degrees, with no
/// flatness gate. Exposed so the harness can witness `d_omega^2 != 0` on
/// non-flat connections.
pub fn aomoto_deltas(a: &Arc<Cdga>, rep: &Representation, omega: &Connection) -> Result<Vec<Mat>> {
    check_compatible(a, rep, omega)?;
    let vdim = rep.v_dim();
    let mut deltas = Vec::with_capacity(a.q() + 1);
    for i in 0..=a.q() {
        let rows = a.dim(i + 1) * vdim;
        let cols = a.dim(i) * vdim;
        let mut delta = Mat::zeros(rows, cols);
        for b in 0..a.dim(i) {
            // d alpha (x) v
            let dcol = a.d(i).col(b);
            for (m, c) in dcol.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for v in 0..vdim {
                    let val = delta.at(m * vdim + v, b * vdim + v) + c;
                    *delta.at_mut(m * vdim + v, b * vdim + v) = val;
                }
            }
            // sum_j eta_j alpha (x) theta(x_j) v
            let mut basis_b = vec![Rat::zero(); a.dim(i)];
            basis_b[b] = Rat::one();
            for j in 0..omega.lie.dim() {
                let eta_j = omega.component_form(j);
                if eta_j.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let prod = a.prod_elem(1, i, &eta_j, &basis_b);
                let theta_j = rep.mat(j);
                for (m, pm) in prod.iter().enumerate() {
                    if pm.is_zero() {
                        continue;
                    }
                    for vp in 0..vdim {
                        for v in 0..vdim {
                            let t = theta_j.at(vp, v);
                            if t.is_zero() {
                                continue;
                            }
                            let val = delta.at(m * vdim + vp, b * vdim + v) + &(pm * t);
                            *delta.at_mut(m * vdim + vp, b * vdim + v) = val;
                        }
                    }
                }
            }
        }
        deltas.push(delta);
    }
    Ok(deltas)
}

/// Builds the Aomoto complex of a flat connection. Refuses non-flat input
/// (for which `d_omega^2 = 0` would fail) with [`Error::NotFlat`].
pub fn covariant_derivative(
    a: &Arc<Cdga>,
    rep: &Representation,
    omega: &Connection,
) -> Result<AomotoComplex> {
    check_compatible(a, rep, omega)?;
    if !omega.is_flat() {
        return Err(Error::NotFlat);
    }
    let deltas = aomoto_deltas(a, rep, omega)?;
    let dims: Vec<usize> = (0..=a.q() + 1).map(|i| a.dim(i) * rep.v_dim()).collect();
    let complex = CochainComplex::new(dims, deltas)?;
    Ok(AomotoComplex {
        complex,
        cdga: a.clone(),
        rep: rep.clone(),
        connection: omega.clone(),
    })
}

/// Twisted Betti number `dim H^i(A (x) V, d_omega)` for a flat `omega`.
pub fn twisted_betti(
    a: &Arc<Cdga>,
    rep: &Representation,
    omega: &Connection,
    i: usize,
) -> Result<usize> {
    if i > a.q() {
        return Err(Error::DegreeOutOfRange {
            degree: i,
            max: a.q(),
        });
    }
    covariant_derivative(a, rep, omega)?.betti(i)
}

/// Resonance membership: twisted Betti number at `query.degree` is at least
/// `query.depth`.
pub fn in_resonance(
    a: &Arc<Cdga>,
    rep: &Representation,
    omega: &Connection,
    query: ResonanceQuery,
) -> Result<bool> {
    Ok(twisted_betti(a, rep, omega, query.degree)? >= query.depth)
}

/// Stacked matrix of the generator actions `theta(phi(x_j))`.
fn stacked_actions(rep: &Representation, phi: &LieMapCandidate) -> Mat {
    let vdim = rep.v_dim();
    let mut stacked = Mat::zeros(0, vdim);
    for j in 0..phi.generators() {
        stacked = stacked.vstack(&rep.apply(&phi.value(j)));
    }
    stacked
}

/// Degree-0 membership by kernels: the joint kernel of all generator
/// actions is nonzero. Requires `phi` to be a morphism.
pub fn r0_membership_by_kernels(
    p: &HolonomyPresentation,
    rep: &Representation,
    phi: &LieMapCandidate,
) -> Result<bool> {
    if !p.kills_relations(&rep.lie, phi) {
        return Err(Error::NotAHomomorphism);
    }
    let stacked = stacked_actions(rep, phi);
    Ok(stacked.rank() < rep.v_dim())
}

/// Cohomology of the presented Lie algebra with coefficients in `V` pulled
/// back along `phi`, in degrees 0 and 1.
///
/// Degree 0 is the joint kernel of the generator actions. Degree 1 is
/// `dim Z^1 - dim B^1`, where a 1-cocycle assigns `c_j in V` to each
/// generator subject to, for each relation `l + sum_{j<k} q_jk [x_j,x_k]`:
///
/// ```text
/// c(l) + sum_{j<k} q_jk (X_j c_k - X_k c_j) = 0,   X = theta . phi,
/// ```
///
/// and coboundaries are the assignments `x_j -> X_j v`.
pub fn lie_low_cohomology_dim(
    p: &HolonomyPresentation,
    rep: &Representation,
    phi: &LieMapCandidate,
    i: usize,
) -> Result<usize> {
    if i > 1 {
        return Err(Error::UnsupportedDegree(i));
    }
    if !p.kills_relations(&rep.lie, phi) {
        return Err(Error::NotAHomomorphism);
    }
    let vdim = rep.v_dim();
    let stacked = stacked_actions(rep, phi);
    if i == 0 {
        return Ok(vdim - stacked.rank());
    }

    let actions: Vec<Mat> = (0..p.gens).map(|j| rep.apply(&phi.value(j))).collect();
    let mut constraints = Mat::zeros(p.relations() * vdim, p.gens * vdim);
    for m in 0..p.relations() {
        // linear part: c(l) = sum_j l_j c_j
        for j in 0..p.gens {
            let lc = p.rel_linear.at(m, j);
            if !lc.is_zero() {
                for v in 0..vdim {
                    let val = constraints.at(m * vdim + v, j * vdim + v) + lc;
                    *constraints.at_mut(m * vdim + v, j * vdim + v) = val;
                }
            }
        }
        // quadratic part: q_jk (X_j c_k - X_k c_j)
        let quad = &p.rel_quadratic[m];
        for j in 0..p.gens {
            for k in j + 1..p.gens {
                let qc = quad.at(j, k);
                if qc.is_zero() {
                    continue;
                }
                for vp in 0..vdim {
                    for v in 0..vdim {
                        let xj = actions[j].at(vp, v);
                        if !xj.is_zero() {
                            let val = constraints.at(m * vdim + vp, k * vdim + v) + &(qc * xj);
                            *constraints.at_mut(m * vdim + vp, k * vdim + v) = val;
                        }
                        let xk = actions[k].at(vp, v);
                        if !xk.is_zero() {
                            let val = constraints.at(m * vdim + vp, j * vdim + v) - &(qc * xk);
                            *constraints.at_mut(m * vdim + vp, j * vdim + v) = val;
                        }
                    }
                }
            }
        }
    }
    let z1 = p.gens * vdim - constraints.rank();
    let b1 = stacked.rank();
    Ok(z1 - b1)
}

/// Rank-one membership criterion on a zero-differential algebra: a point
/// `eta (x) g` is degree-`i` resonant iff `eta` is resonant for the
/// rank-one (trivial coefficient) theory or `det theta(g) = 0`. Exposed
/// separately from [`in_resonance`] so the equivalence is testable.
pub fn rank_one_resonance_criterion(
    a: &Arc<Cdga>,
    rep: &Representation,
    eta: &[Rat],
    g: &[Rat],
    i: usize,
) -> Result<bool> {
    if !a.is_zero_differential() {
        return Err(Error::ZeroDifferentialRequired);
    }
    assert!(a.dim(i) > 0, "criterion requires a nonzero degree-i piece");
    if rep.apply(g).det()?.is_zero() {
        return Ok(true);
    }
    rank_one_self_resonance(a, eta, i)
}

/// Membership of a closed 1-form in the rank-one resonance locus of `A`
/// itself (one-dimensional trivial coefficients).
pub fn rank_one_self_resonance(a: &Arc<Cdga>, eta: &[Rat], i: usize) -> Result<bool> {
    let entry = crate::lie::abelian(1);
    let coeffs = Mat::from_cols(a.dim(1), &[eta.to_vec()]);
    let omega = Connection::new(a.clone(), entry.lie.clone(), coeffs)?;
    in_resonance(
        a,
        &entry.rep,
        &omega,
        ResonanceQuery {
            degree: i,
            depth: 1,
        },
    )
}

/// Module action `A^i x (A^n (x) V) -> A^{i+n} (x) V` of a degree-`i`
/// basis element on a coefficient vector.
fn module_act(
    a: &Arc<Cdga>,
    i: usize,
    alpha: usize,
    n: usize,
    elem: &[Rat],
    vdim: usize,
) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.dim(i + n) * vdim];
    for b in 0..a.dim(n) {
        let prod = a.prod_basis(i, n, alpha, b);
        for (m, pm) in prod.iter().enumerate() {
            if pm.is_zero() {
                continue;
            }
            for v in 0..vdim {
                let c = &elem[b * vdim + v];
                if !c.is_zero() {
                    out[m * vdim + v] += pm * c;
                }
            }
        }
    }
    out
}

/// Verifies the module-structure chain identity
/// `d_omega(a.(b (x) v)) = (da).(b (x) v) + (-1)^{|a|} a.d_omega(b (x) v)`
/// on every basis triple with computable degrees.
pub fn module_structure_chain_check(
    a: &Arc<Cdga>,
    rep: &Representation,
    omega: &Connection,
) -> Result<bool> {
    check_compatible(a, rep, omega)?;
    if !omega.is_flat() {
        return Err(Error::NotFlat);
    }
    let deltas = aomoto_deltas(a, rep, omega)?;
    let vdim = rep.v_dim();

    for i in 0..=a.q() {
        for n in 0..=a.q() - i {
            for alpha in 0..a.dim(i) {
                for b in 0..a.dim(n) {
                    for v in 0..vdim {
                        let mut elem = vec![Rat::zero(); a.dim(n) * vdim];
                        elem[b * vdim + v] = Rat::one();

                        // d_omega(a.(b (x) v))
                        let lhs =
                            deltas[i + n].mul_vec(&module_act(a, i, alpha, n, &elem, vdim));

                        // (da).(b (x) v)
                        let da = a.d(i).col(alpha);
                        let mut term1 = vec![Rat::zero(); a.dim(i + n + 1) * vdim];
                        for (mi, c) in da.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let partial = module_act(a, i + 1, mi, n, &elem, vdim);
                            for (o, p) in term1.iter_mut().zip(partial) {
                                *o += &p * c;
                            }
                        }

                        // (-1)^i a . d_omega(b (x) v)
                        let d_elem = deltas[n].mul_vec(&elem);
                        let mut term2 = module_act(a, i, alpha, n + 1, &d_elem, vdim);
                        if i % 2 == 1 {
                            for c in term2.iter_mut() {
                                *c = -c.clone();
                            }
                        }

                        let rhs: Vec<Rat> =
                            term1.iter().zip(&term2).map(|(x, y)| x + y).collect();
                        if lhs != rhs {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::holonomy_presentation;
    use crate::fixtures;
    use crate::lie;
    use crate::linalg::{rat, rint};

    fn solvable() -> Arc<Cdga> {
        Arc::new(fixtures::solvable_model())
    }

    /// One-parameter family on the solvable model: omega = t * x with
    /// one-dimensional trivial coefficients.
    fn line_point(a: &Arc<Cdga>, t: Rat) -> (Representation, Connection) {
        let entry = lie::abelian(1);
        let omega = Connection::new(
            a.clone(),
            entry.lie.clone(),
            fixtures::single_entry_coeffs(a.dim(1), 1, 0, 0, t),
        )
        .unwrap();
        (entry.rep, omega)
    }

    #[test]
    fn zero_connection_gives_tensor_differential() {
        let a = solvable();
        let entry = lie::sl2();
        let omega = Connection::zero(a.clone(), entry.lie.clone());
        for i in 0..=a.q() {
            let b = twisted_betti(&a, &entry.rep, &omega, i).unwrap();
            assert_eq!(b, a.cohomology_dim(i).unwrap() * entry.rep.v_dim());
        }
    }

    #[test]
    fn covariant_derivative_blocks_on_the_line() {
        // omega = t*x on the solvable model: d(1) = t x, d(x) = 0,
        // d(y) = (t - 1) x^y
        let a = solvable();
        let t = rint(3);
        let (rep, omega) = line_point(&a, t.clone());
        let complex = covariant_derivative(&a, &rep, &omega).unwrap();
        let d0 = complex.delta(0);
        assert_eq!(d0.at(0, 0), &t);
        assert_eq!(d0.at(1, 0), &rint(0));
        let d1 = complex.delta(1);
        assert_eq!(d1.at(0, 0), &rint(0));
        assert_eq!(d1.at(0, 1), &(t - rint(1)));
    }

    #[test]
    fn degree_zero_block_is_theta_of_g() {
        let a = Arc::new(fixtures::exterior(&["e"], 1));
        let entry = lie::sl2();
        let h = [rint(0), rint(0), rint(1)];
        let omega = Connection::rank_one(a.clone(), entry.lie.clone(), &[rint(1)], &h).unwrap();
        let complex = covariant_derivative(&a, &entry.rep, &omega).unwrap();
        assert_eq!(complex.delta(0), &entry.rep.apply(&h));
    }

    #[test]
    fn twisted_betti_on_the_line() {
        let a = solvable();
        for (t, expected) in [
            (rint(0), 1),
            (rint(1), 1),
            (rint(2), 0),
            (rint(-3), 0),
            (rat(1, 2), 0),
        ] {
            let (rep, omega) = line_point(&a, t);
            assert_eq!(twisted_betti(&a, &rep, &omega, 1).unwrap(), expected);
        }
    }

    #[test]
    fn resonance_on_the_line_is_zero_and_one() {
        let a = solvable();
        for t in -5i64..=5 {
            let (rep, omega) = line_point(&a, rint(t));
            let member = in_resonance(
                &a,
                &rep,
                &omega,
                ResonanceQuery {
                    degree: 1,
                    depth: 1,
                },
            )
            .unwrap();
            assert_eq!(member, t == 0 || t == 1);
        }
    }

    #[test]
    fn depth_zero_is_always_member() {
        let a = solvable();
        let (rep, omega) = line_point(&a, rint(4));
        assert!(in_resonance(
            &a,
            &rep,
            &omega,
            ResonanceQuery {
                degree: 1,
                depth: 0
            }
        )
        .unwrap());
    }

    #[test]
    fn non_flat_connection_is_refused() {
        let a = solvable();
        let entry = lie::abelian(1);
        let omega = Connection::new(
            a.clone(),
            entry.lie.clone(),
            fixtures::single_entry_coeffs(2, 1, 1, 0, rint(1)),
        )
        .unwrap();
        assert_eq!(
            covariant_derivative(&a, &entry.rep, &omega).unwrap_err(),
            Error::NotFlat
        );
        // the gate is not vacuous: the raw blocks fail d^2 = 0
        let deltas = aomoto_deltas(&a, &entry.rep, &omega).unwrap();
        assert!(!deltas[1].mul(&deltas[0]).is_zero());
    }

    #[test]
    fn degree_out_of_range() {
        let a = solvable();
        let (rep, omega) = line_point(&a, rint(0));
        assert!(matches!(
            twisted_betti(&a, &rep, &omega, 3),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn r0_membership_examples() {
        // free presentation on one generator with gl2: membership iff
        // det(phi(x)) = 0
        let a = Arc::new(fixtures::exterior(&["e"], 1));
        let p = holonomy_presentation(&a);
        let entry = lie::gl2();
        for (g, expected) in [
            (vec![rint(1), rint(0), rint(0), rint(0)], true), // diag(1,0)
            (vec![rint(1), rint(0), rint(0), rint(1)], false), // identity
            (vec![rint(0), rint(1), rint(1), rint(0)], false), // antidiagonal
            (vec![rint(0), rint(0), rint(0), rint(0)], true), // zero
        ] {
            let phi = LieMapCandidate {
                values: Mat::from_cols(4, &[g.clone()]),
            };
            assert_eq!(
                r0_membership_by_kernels(&p, &entry.rep, &phi).unwrap(),
                expected
            );
            assert_eq!(entry.rep.apply(&g).det().unwrap().is_zero(), expected);
        }
    }

    #[test]
    fn r0_rejects_non_homomorphism() {
        let p = holonomy_presentation(&solvable());
        let entry = lie::abelian(1);
        let phi = LieMapCandidate {
            values: Mat::from_i64(&[&[0, 5]]),
        };
        assert_eq!(
            r0_membership_by_kernels(&p, &entry.rep, &phi).unwrap_err(),
            Error::NotAHomomorphism
        );
    }

    #[test]
    fn lie_cohomology_of_zero_map() {
        let p = holonomy_presentation(&solvable());
        let entry = lie::sl2();
        let phi = LieMapCandidate {
            values: Mat::zeros(3, 2),
        };
        assert_eq!(lie_low_cohomology_dim(&p, &entry.rep, &phi, 0).unwrap(), 2);
        // with X = 0 the constraints reduce to c(l) = 0
        let vdim = entry.rep.v_dim();
        let expected_z1 = p.gens * vdim - p.rel_linear.rank() * vdim;
        assert_eq!(
            lie_low_cohomology_dim(&p, &entry.rep, &phi, 1).unwrap(),
            expected_z1
        );
    }

    #[test]
    fn lie_cohomology_on_the_line_matches_twisted_betti() {
        let a = solvable();
        let p = holonomy_presentation(&a);
        let entry = lie::abelian(1);
        for t in -5i64..=5 {
            let phi = LieMapCandidate {
                values: Mat::from_rows(vec![vec![rint(t), rint(0)]]),
            };
            let h1 = lie_low_cohomology_dim(&p, &entry.rep, &phi, 1).unwrap();
            assert_eq!(h1, usize::from(t == 0 || t == 1));
            let (rep, omega) = line_point(&a, rint(t));
            assert_eq!(h1, twisted_betti(&a, &rep, &omega, 1).unwrap());
            assert_eq!(
                lie_low_cohomology_dim(&p, &entry.rep, &phi, 0).unwrap(),
                twisted_betti(&a, &rep, &omega, 0).unwrap()
            );
        }
    }

    #[test]
    fn free_presentation_with_invertible_action_has_no_invariants() {
        let a = Arc::new(fixtures::exterior(&["e"], 1));
        let p = holonomy_presentation(&a);
        let entry = lie::gl2();
        let phi = LieMapCandidate {
            values: Mat::from_cols(4, &[vec![rint(1), rint(0), rint(0), rint(1)]]),
        };
        assert_eq!(lie_low_cohomology_dim(&p, &entry.rep, &phi, 0).unwrap(), 0);
    }

    #[test]
    fn unsupported_degree_is_rejected() {
        let p = holonomy_presentation(&solvable());
        let entry = lie::abelian(1);
        let phi = LieMapCandidate {
            values: Mat::zeros(1, 2),
        };
        assert_eq!(
            lie_low_cohomology_dim(&p, &entry.rep, &phi, 2).unwrap_err(),
            Error::UnsupportedDegree(2)
        );
    }

    #[test]
    fn rank_one_criterion_matches_direct_membership() {
        let a = Arc::new(fixtures::exterior(&["e1", "e2"], 2));
        let entry = lie::sl2();
        let etas = [
            vec![rint(0), rint(0)],
            vec![rint(1), rint(0)],
            vec![rint(2), rint(-3)],
        ];
        let gs = [
            vec![rint(1), rint(0), rint(0)], // e: singular action
            vec![rint(0), rint(0), rint(1)], // h: invertible action
            vec![rint(1), rint(1), rint(0)], // e+f: invertible action
        ];
        for eta in &etas {
            for g in &gs {
                for i in 0..=2usize {
                    let crit = rank_one_resonance_criterion(&a, &entry.rep, eta, g, i).unwrap();
                    let omega =
                        Connection::rank_one(a.clone(), entry.lie.clone(), eta, g).unwrap();
                    let direct = in_resonance(
                        &a,
                        &entry.rep,
                        &omega,
                        ResonanceQuery {
                            degree: i,
                            depth: 1,
                        },
                    )
                    .unwrap();
                    assert_eq!(crit, direct, "eta={eta:?} g={g:?} i={i}");
                }
            }
        }
    }

    #[test]
    fn rank_one_criterion_requires_zero_differential() {
        let a = solvable();
        let entry = lie::sl2();
        assert_eq!(
            rank_one_resonance_criterion(
                &a,
                &entry.rep,
                &[rint(1), rint(0)],
                &[rint(0), rint(0), rint(1)],
                1
            )
            .unwrap_err(),
            Error::ZeroDifferentialRequired
        );
    }

    #[test]
    fn chain_identity_holds_on_flat_points() {
        let a = solvable();
        let (rep, omega) = line_point(&a, rint(1));
        assert!(module_structure_chain_check(&a, &rep, &omega).unwrap());

        let entry = lie::sol2();
        let omega = Connection::rank_one(
            a.clone(),
            entry.lie.clone(),
            &[rint(1), rint(0)],
            &[rint(2), rint(0)],
        )
        .unwrap();
        assert!(module_structure_chain_check(&a, &entry.rep, &omega).unwrap());
    }

    /// Membership is monotone in the depth parameter.
    #[test]
    fn depth_semicontinuity() {
        let a = solvable();
        for t in [rint(0), rint(1), rint(2)] {
            let (rep, omega) = line_point(&a, t);
            for i in 0..=1usize {
                let b = twisted_betti(&a, &rep, &omega, i).unwrap();
                for m in 0..=b {
                    assert!(in_resonance(
                        &a,
                        &rep,
                        &omega,
                        ResonanceQuery {
                            degree: i,
                            depth: m
                        }
                    )
                    .unwrap());
                }
                assert!(!in_resonance(
                    &a,
                    &rep,
                    &omega,
                    ResonanceQuery {
                        degree: i,
                        depth: b + 1
                    }
                )
                .unwrap());
            }
        }
    }
}
