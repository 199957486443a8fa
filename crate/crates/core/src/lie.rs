//! Finite-dimensional Lie algebras by structure constants, a small builtin
//! catalog, and finite-dimensional representations with exact matrices.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rint, Mat, Rat};

/// Lie algebra given by structure constants: `bracket[i][j]` is the
/// coefficient vector of `[x_i, x_j]` in the chosen basis.
#[derive(Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    bracket: Vec<Vec<Vec<Rat>>>,
    labels: Vec<String>,
    name: String,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra({}, dim={})", self.name, self.dim)
    }
}

impl LieAlgebra {
    pub fn new(
        dim: usize,
        bracket: Vec<Vec<Vec<Rat>>>,
        labels: Vec<String>,
        name: impl Into<String>,
    ) -> Result<LieAlgebra> {
        if bracket.len() != dim
            || bracket.iter().any(|row| row.len() != dim)
            || bracket
                .iter()
                .any(|row| row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::Invalid("bracket tensor must be dim^3".into()));
        }
        if labels.len() != dim {
            return Err(Error::Invalid("label count must match dim".into()));
        }
        Ok(LieAlgebra {
            dim,
            bracket,
            labels,
            name: name.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rat] {
        &self.bracket[i][j]
    }

    /// Bracket of two coefficient vectors.
    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut acc = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for (out, c) in acc.iter_mut().zip(&self.bracket[i][j]) {
                    *out += c * &f;
                }
            }
        }
        acc
    }

    /// True iff `[x, y] = 0`.
    pub fn commutes(&self, x: &[Rat], y: &[Rat]) -> bool {
        self.bracket_vec(x, y).iter().all(|c| c.is_zero())
    }

    /// Matrix of `ad(v) = [v, -]` in the chosen basis.
    pub fn ad(&self, v: &[Rat]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for k in 0..self.dim {
            let mut basis = vec![Rat::zero(); self.dim];
            basis[k] = rint(1);
            let col = self.bracket_vec(v, &basis);
            for (r, c) in col.into_iter().enumerate() {
                *m.at_mut(r, k) = c;
            }
        }
        m
    }

    /// Structure constants in a new basis, given as the columns of an
    /// invertible matrix over the old one.
    pub fn in_basis(&self, basis: &Mat) -> Result<LieAlgebra> {
        if basis.rows() != self.dim || basis.cols() != self.dim {
            return Err(Error::Invalid("basis matrix must be dim x dim".into()));
        }
        let mut bracket = vec![vec![vec![Rat::zero(); self.dim]; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let value = self.bracket_vec(&basis.col(i), &basis.col(j));
                let coords = basis
                    .solve(&value)
                    .ok_or_else(|| Error::Invalid("basis matrix is singular".into()))?;
                bracket[i][j] = coords;
            }
        }
        LieAlgebra::new(
            self.dim,
            bracket,
            self.labels.clone(),
            format!("{}-rebased", self.name),
        )
    }

    /// Checks antisymmetry and the Jacobi identity on all basis triples.
    pub fn validate(&self) -> LieValidationReport {
        let mut failures = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let anti: Vec<Rat> = self.bracket[j][i].iter().map(|c| -c.clone()).collect();
                if self.bracket[i][j] != anti {
                    failures.push(format!(
                        "antisymmetry fails at ({}, {})",
                        self.labels[i], self.labels[j]
                    ));
                }
            }
        }
        let basis = |k: usize| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); self.dim];
            v[k] = rint(1);
            v
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let a = self.bracket_vec(&self.bracket[i][j].clone(), &basis(k));
                    let b = self.bracket_vec(&self.bracket[j][k].clone(), &basis(i));
                    let c = self.bracket_vec(&self.bracket[k][i].clone(), &basis(j));
                    let jacobi: Vec<Rat> = a
                        .iter()
                        .zip(&b)
                        .zip(&c)
                        .map(|((x, y), z)| x + y + z)
                        .collect();
                    if jacobi.iter().any(|c| !c.is_zero()) {
                        failures.push(format!(
                            "jacobi fails at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        LieValidationReport { failures }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct LieValidationReport {
    pub failures: Vec<String>,
}

impl LieValidationReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Representation `theta: g -> gl(V)` by one `v_dim x v_dim` matrix per
/// basis element of `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub lie: Arc<LieAlgebra>,
    v_dim: usize,
    mats: Vec<Mat>,
}

impl Representation {
    pub fn new(lie: Arc<LieAlgebra>, mats: Vec<Mat>) -> Result<Representation> {
        if mats.len() != lie.dim() {
            return Err(Error::Invalid(
                "need one matrix per Lie basis element".into(),
            ));
        }
        let v_dim = mats.first().map(|m| m.rows()).unwrap_or(0);
        if v_dim == 0 {
            return Err(Error::Invalid("representation space must be nonzero".into()));
        }
        if mats.iter().any(|m| m.rows() != v_dim || m.cols() != v_dim) {
            return Err(Error::Invalid("representation matrices must be square and equal-sized".into()));
        }
        Ok(Representation { lie, v_dim, mats })
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn mat(&self, i: usize) -> &Mat {
        &self.mats[i]
    }

    /// `theta` applied to a coefficient vector of `g`.
    pub fn apply(&self, x: &[Rat]) -> Mat {
        assert_eq!(x.len(), self.lie.dim());
        let mut acc = Mat::zeros(self.v_dim, self.v_dim);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&self.mats[i].scale(c));
        }
        acc
    }

    /// Checks `theta([x_i, x_j]) = [theta(x_i), theta(x_j)]` on all basis
    /// pairs; failing pairs are reported by index.
    pub fn validate(&self) -> RepValidationReport {
        let mut failures = Vec::new();
        for i in 0..self.lie.dim() {
            for j in 0..self.lie.dim() {
                let lhs = self.apply(self.lie.bracket_basis(i, j));
                let rhs = self.mats[i]
                    .mul(&self.mats[j])
                    .sub(&self.mats[j].mul(&self.mats[i]));
                if lhs != rhs {
                    failures.push((i, j));
                }
            }
        }
        RepValidationReport { failures }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RepValidationReport {
    pub failures: Vec<(usize, usize)>,
}

impl RepValidationReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A Lie algebra from the builtin catalog together with its canonical
/// representation.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub lie: Arc<LieAlgebra>,
    pub rep: Representation,
}

/// Builtin catalog:
///
/// * `abelian(n)` — zero bracket, diagonal representation on an
///   `n`-dimensional space (`x_i` acts by the matrix unit `E_ii`).
/// * `sl2` — basis `(e, f, h)` with `[h,e] = 2e`, `[h,f] = -2f`,
///   `[e,f] = h`; standard 2-dimensional representation.
/// * `sol2` — basis `(a, b)` with `[a,b] = b`; upper-triangular 2x2
///   representation `a -> diag(1,0)`, `b -> E_12`.
/// * `gl2` — matrix units `(E11, E12, E21, E22)` with the identity
///   representation.
pub fn builtin(name: &str) -> Result<CatalogEntry> {
    let trimmed = name.trim();
    if let Some(rest) = trimmed
        .strip_prefix("abelian(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::UnknownName(trimmed.to_string()))?;
        if n == 0 {
            return Err(Error::UnknownName(trimmed.to_string()));
        }
        return Ok(abelian(n));
    }
    match trimmed {
        "sl2" => Ok(sl2()),
        "sol2" => Ok(sol2()),
        "gl2" => Ok(gl2()),
        _ => Err(Error::UnknownName(trimmed.to_string())),
    }
}

pub fn abelian(n: usize) -> CatalogEntry {
    let bracket = vec![vec![vec![Rat::zero(); n]; n]; n];
    let labels = (0..n).map(|i| format!("t{}", i + 1)).collect();
    let lie = Arc::new(
        LieAlgebra::new(n, bracket, labels, format!("abelian({n})")).expect("valid"),
    );
    let mats: Vec<Mat> = (0..n)
        .map(|i| {
            let mut m = Mat::zeros(n, n);
            *m.at_mut(i, i) = rint(1);
            m
        })
        .collect();
    let rep = Representation::new(lie.clone(), mats).expect("valid");
    CatalogEntry { lie, rep }
}

pub fn sl2() -> CatalogEntry {
    let dim = 3;
    let mut bracket = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    let set = |bracket: &mut Vec<Vec<Vec<Rat>>>, i: usize, j: usize, out: Vec<(i64, usize)>| {
        for (c, k) in &out {
            bracket[i][j][*k] = rint(*c);
            bracket[j][i][*k] = rint(-*c);
        }
    };
    // basis order (e, f, h)
    set(&mut bracket, 2, 0, vec![(2, 0)]); // [h,e] = 2e
    set(&mut bracket, 2, 1, vec![(-2, 1)]); // [h,f] = -2f
    set(&mut bracket, 0, 1, vec![(1, 2)]); // [e,f] = h
    let lie = Arc::new(
        LieAlgebra::new(
            dim,
            bracket,
            vec!["e".into(), "f".into(), "h".into()],
            "sl2",
        )
        .expect("valid"),
    );
    let e = Mat::from_i64(&[&[0, 1], &[0, 0]]);
    let f = Mat::from_i64(&[&[0, 0], &[1, 0]]);
    let h = Mat::from_i64(&[&[1, 0], &[0, -1]]);
    let rep = Representation::new(lie.clone(), vec![e, f, h]).expect("valid");
    CatalogEntry { lie, rep }
}

pub fn sol2() -> CatalogEntry {
    let dim = 2;
    let mut bracket = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    bracket[0][1][1] = rint(1); // [a,b] = b
    bracket[1][0][1] = rint(-1);
    let lie = Arc::new(
        LieAlgebra::new(dim, bracket, vec!["a".into(), "b".into()], "sol2").expect("valid"),
    );
    let a = Mat::from_i64(&[&[1, 0], &[0, 0]]);
    let b = Mat::from_i64(&[&[0, 1], &[0, 0]]);
    let rep = Representation::new(lie.clone(), vec![a, b]).expect("valid");
    CatalogEntry { lie, rep }
}

pub fn gl2() -> CatalogEntry {
    let dim = 4;
    // basis order (E11, E12, E21, E22); [E_ab, E_cd] = d_bc E_ad - d_da E_cb
    let unit = |a: usize, b: usize| -> usize { a * 2 + b };
    let mut bracket = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    let i = unit(a, b);
                    let j = unit(c, d);
                    if b == c {
                        bracket[i][j][unit(a, d)] += rint(1);
                    }
                    if d == a {
                        bracket[i][j][unit(c, b)] -= rint(1);
                    }
                }
            }
        }
    }
    let labels = vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()];
    let lie = Arc::new(LieAlgebra::new(dim, bracket, labels, "gl2").expect("valid"));
    let mats = vec![
        Mat::from_i64(&[&[1, 0], &[0, 0]]),
        Mat::from_i64(&[&[0, 1], &[0, 0]]),
        Mat::from_i64(&[&[0, 0], &[1, 0]]),
        Mat::from_i64(&[&[0, 0], &[0, 1]]),
    ];
    let rep = Representation::new(lie.clone(), mats).expect("valid");
    CatalogEntry { lie, rep }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn abelian_has_zero_bracket() {
        let entry = builtin("abelian(1)").unwrap();
        assert_eq!(entry.lie.dim(), 1);
        assert!(entry.lie.bracket_vec(&[rint(3)], &[rint(5)]).iter().all(|c| c.is_zero()));
        assert!(entry.lie.validate().is_pass());
        assert!(entry.rep.validate().is_pass());
    }

    #[test]
    fn sl2_structure_constants() {
        let entry = sl2();
        assert!(entry.lie.validate().is_pass());
        // [e,f] = h, against the stated table
        let ef = entry
            .lie
            .bracket_vec(&[rint(1), rint(0), rint(0)], &[rint(0), rint(1), rint(0)]);
        assert_eq!(ef, vec![rint(0), rint(0), rint(1)]);
        assert!(entry.rep.validate().is_pass());
    }

    #[test]
    fn sol2_single_bracket_pair() {
        let entry = sol2();
        assert!(entry.lie.validate().is_pass());
        let ab = entry.lie.bracket_vec(&[rint(1), rint(0)], &[rint(0), rint(1)]);
        assert_eq!(ab, vec![rint(0), rint(1)]);
        assert!(entry.rep.validate().is_pass());
    }

    #[test]
    fn gl2_identity_representation_validates() {
        let entry = gl2();
        assert!(entry.lie.validate().is_pass());
        assert!(entry.rep.validate().is_pass());
    }

    #[test]
    fn unknown_name_is_rejected() {
        assert!(matches!(builtin("so3"), Err(Error::UnknownName(_))));
        assert!(matches!(builtin("abelian(0)"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn broken_representation_reports_pair() {
        let entry = sl2();
        let mut mats = entry.rep.mats().to_vec();
        mats[2] = Mat::identity(2); // h -> id breaks [h,e] = 2e
        let rep = Representation::new(entry.lie.clone(), mats).unwrap();
        let report = rep.validate();
        assert!(!report.is_pass());
        assert!(report.failures.contains(&(2, 0)));
    }

    #[test]
    fn commutes_examples() {
        let entry = sl2();
        let e = vec![rint(1), rint(0), rint(0)];
        let f = vec![rint(0), rint(1), rint(0)];
        assert!(entry.lie.commutes(&e, &e));
        assert!(!entry.lie.commutes(&e, &f));

        let ab = abelian(3);
        let x = vec![rint(1), rint(2), rint(3)];
        let y = vec![rint(-4), rint(0), rint(7)];
        assert!(ab.lie.commutes(&x, &y));
    }

    /// For sl2 and sol2, nonzero commuting pairs are colinear. Exercised on
    /// 500 random pairs plus all colinear pairs from a small grid.
    #[test]
    fn centralizer_dichotomy_sl2_sol2() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for entry in [sl2(), sol2()] {
            let dim = entry.lie.dim();
            let mut seen_commuting = 0usize;
            for _ in 0..500 {
                let x: Vec<Rat> = (0..dim).map(|_| rint(rng.gen_range(-4..=4))).collect();
                let y: Vec<Rat> = (0..dim).map(|_| rint(rng.gen_range(-4..=4))).collect();
                if x.iter().all(|c| c.is_zero()) || y.iter().all(|c| c.is_zero()) {
                    continue;
                }
                if entry.lie.commutes(&x, &y) {
                    seen_commuting += 1;
                    let m = Mat::from_rows(vec![x.clone(), y.clone()]);
                    assert_eq!(m.rank(), 1, "commuting nonzero pair must be colinear");
                }
            }
            assert!(seen_commuting > 0, "sampling never hit a commuting pair");
            // colinear pairs always commute
            for lambda in -3i64..=3 {
                if lambda == 0 {
                    continue;
                }
                let x: Vec<Rat> = (0..dim).map(|i| rint(i as i64 + 1)).collect();
                let y: Vec<Rat> = x.iter().map(|c| c * rint(lambda)).collect();
                assert!(entry.lie.commutes(&x, &y));
            }
        }
    }
}
