//! Finite-type connected commutative differential graded algebras, given by
//! basis and structure constants, plus plain cochain complexes.
//!
//! A `Cdga` stores data for degrees `0..=q+1` so that degree-`q` cohomology
//! is computable. Multiplication is a sparse table of basis products
//! (omitted entries are zero); differentials are matrices `d^i : A^i ->
//! A^{i+1}` in the column-vector convention (`diff[i]` has `dims[i+1]` rows
//! and `dims[i]` columns). Basis ordering is part of the input and fixed
//! thereafter.
//!
//! Structural well-formedness (shapes, index bounds) is enforced at
//! construction; the algebra axioms (unit, graded commutativity,
//! associativity, Leibniz, d^2 = 0) are checked by [`Cdga::validate`], which
//! reports violations as data rather than failing.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Mat, Rat};

/// Sparse basis-product entry: `basis a` of degree `i` times `basis b` of
/// degree `j`, with the product expanded in the degree `i+j` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MultEntry {
    pub i: usize,
    pub j: usize,
    pub a: usize,
    pub b: usize,
    pub out: Vec<(Rat, usize)>,
}

#[derive(Clone, PartialEq)]
pub struct Cdga {
    q: usize,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    /// (i, j, a, b) -> dense product vector of length dims[i+j].
    mult: BTreeMap<(usize, usize, usize, usize), Vec<Rat>>,
    /// diff[i]: dims[i+1] x dims[i], for i <= q.
    diff: Vec<Mat>,
}

impl std::fmt::Debug for Cdga {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cdga(q={}, dims={:?})", self.q, self.dims)
    }
}

impl Cdga {
    /// Structural construction. Checks shapes and index bounds only; run
    /// [`Cdga::validate`] for the algebra axioms.
    pub fn new(
        q: usize,
        dims: Vec<usize>,
        labels: Option<Vec<Vec<String>>>,
        mult_entries: Vec<MultEntry>,
        diff: Vec<Mat>,
    ) -> Result<Cdga> {
        if q < 1 {
            return Err(Error::Invalid("truncation q must be >= 1".into()));
        }
        if dims.len() != q + 2 {
            return Err(Error::Invalid(format!(
                "dims must cover degrees 0..={} (expected {} entries, got {})",
                q + 1,
                q + 2,
                dims.len()
            )));
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != dims.len() || l.iter().zip(&dims).any(|(li, &d)| li.len() != d) {
                    return Err(Error::Invalid("label shape does not match dims".into()));
                }
                l
            }
            None => dims
                .iter()
                .enumerate()
                .map(|(deg, &d)| {
                    (0..d)
                        .map(|k| {
                            if deg == 0 {
                                "1".to_string()
                            } else {
                                format!("a{deg}_{k}")
                            }
                        })
                        .collect()
                })
                .collect(),
        };
        if diff.len() != q + 1 {
            return Err(Error::Invalid(format!(
                "diff must have {} matrices (d^0..d^{q}), got {}",
                q + 1,
                diff.len()
            )));
        }
        for (i, d) in diff.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(Error::Invalid(format!(
                    "diff[{i}] must be {}x{}, got {}x{}",
                    dims[i + 1],
                    dims[i],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        let mut mult = BTreeMap::new();
        for e in mult_entries {
            if e.i + e.j > q + 1 {
                return Err(Error::Invalid(format!(
                    "mult entry ({},{}) exceeds stored degree {}",
                    e.i,
                    e.j,
                    q + 1
                )));
            }
            if e.a >= dims[e.i] || e.b >= dims[e.j] {
                return Err(Error::Invalid(format!(
                    "mult entry ({},{},{},{}) out of basis range",
                    e.i, e.j, e.a, e.b
                )));
            }
            let mut dense = vec![Rat::zero(); dims[e.i + e.j]];
            for (coeff, idx) in e.out {
                if idx >= dims[e.i + e.j] {
                    return Err(Error::Invalid(format!(
                        "mult output index {} out of range in degree {}",
                        idx,
                        e.i + e.j
                    )));
                }
                dense[idx] += coeff;
            }
            if mult
                .insert((e.i, e.j, e.a, e.b), dense)
                .is_some()
            {
                return Err(Error::Invalid(format!(
                    "duplicate mult entry ({},{},{},{})",
                    e.i, e.j, e.a, e.b
                )));
            }
        }
        Ok(Cdga {
            q,
            dims,
            labels,
            mult,
            diff,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Dimension of the degree-`i` piece; zero beyond the stored range.
    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn label(&self, degree: usize, idx: usize) -> &str {
        &self.labels[degree][idx]
    }

    pub fn d(&self, i: usize) -> &Mat {
        &self.diff[i]
    }

    pub fn diffs(&self) -> &[Mat] {
        &self.diff
    }

    pub fn is_zero_differential(&self) -> bool {
        self.diff.iter().all(|d| d.is_zero())
    }

    /// Iterates the stored sparse product entries in deterministic order.
    pub fn mult_entries(&self) -> impl Iterator<Item = MultEntry> + '_ {
        self.mult.iter().map(|(&(i, j, a, b), dense)| MultEntry {
            i,
            j,
            a,
            b,
            out: dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(idx, c)| (c.clone(), idx))
                .collect(),
        })
    }

    /// Product of basis elements, as a dense vector in degree `i+j`.
    pub fn prod_basis(&self, i: usize, j: usize, a: usize, b: usize) -> Vec<Rat> {
        debug_assert!(i + j <= self.q + 1);
        match self.mult.get(&(i, j, a, b)) {
            Some(v) => v.clone(),
            None => vec![Rat::zero(); self.dims[i + j]],
        }
    }

    /// Bilinear extension of the basis product to coefficient vectors.
    pub fn prod_elem(&self, i: usize, j: usize, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(x.len(), self.dims[i]);
        debug_assert_eq!(y.len(), self.dims[j]);
        let mut acc = vec![Rat::zero(); self.dims[i + j]];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                if let Some(v) = self.mult.get(&(i, j, a, b)) {
                    let f = xa * yb;
                    for (out, c) in acc.iter_mut().zip(v) {
                        *out += c * &f;
                    }
                }
            }
        }
        acc
    }

    /// Differential applied to a degree-`i` coefficient vector.
    pub fn d_elem(&self, i: usize, x: &[Rat]) -> Vec<Rat> {
        self.diff[i].mul_vec(x)
    }

    /// Betti number `b_i = dim ker d^i - dim im d^{i-1}` for `i <= q`.
    pub fn cohomology_dim(&self, i: usize) -> Result<usize> {
        if i > self.q {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                max: self.q,
            });
        }
        let z = self.dims[i] - self.diff[i].rank();
        let b = if i == 0 { 0 } else { self.diff[i - 1].rank() };
        Ok(z - b)
    }

    /// Basis of the closed degree-1 elements, `ker d^1`. For connected
    /// algebras this is also a basis of `H^1` since `B^1 = 0`.
    pub fn closed_one_forms(&self) -> Vec<Vec<Rat>> {
        self.diff[1].kernel_basis()
    }

    /// Checks the algebra axioms and reports every violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        // connectedness: one-dimensional degree 0
        if self.dims[0] != 1 {
            violations.push(Violation {
                axiom: Axiom::Connectedness,
                degrees: vec![0],
                indices: vec![],
                detail: format!("dims[0] = {}, expected 1", self.dims[0]),
            });
        }

        // unit law, only meaningful when degree 0 is one-dimensional
        if self.dims[0] == 1 {
            for j in 0..=self.q + 1 {
                for b in 0..self.dims[j] {
                    let mut unit_vec = vec![Rat::zero(); self.dims[j]];
                    unit_vec[b] = Rat::one();
                    if self.prod_basis(0, j, 0, b) != unit_vec {
                        violations.push(Violation {
                            axiom: Axiom::Unit,
                            degrees: vec![0, j],
                            indices: vec![0, b],
                            detail: format!("1 * {} != {}", self.label(j, b), self.label(j, b)),
                        });
                    }
                    if self.prod_basis(j, 0, b, 0) != unit_vec {
                        violations.push(Violation {
                            axiom: Axiom::Unit,
                            degrees: vec![j, 0],
                            indices: vec![b, 0],
                            detail: format!("{} * 1 != {}", self.label(j, b), self.label(j, b)),
                        });
                    }
                }
            }
        }

        // graded commutativity on all stored basis pairs
        for i in 0..=self.q + 1 {
            for j in 0..=self.q + 1 - i {
                for a in 0..self.dims[i] {
                    for b in 0..self.dims[j] {
                        let lhs = self.prod_basis(i, j, a, b);
                        let mut rhs = self.prod_basis(j, i, b, a);
                        if (i * j) % 2 == 1 {
                            for c in rhs.iter_mut() {
                                *c = -c.clone();
                            }
                        }
                        if lhs != rhs {
                            violations.push(Violation {
                                axiom: Axiom::GradedCommutativity,
                                degrees: vec![i, j],
                                indices: vec![a, b],
                                detail: format!(
                                    "{} * {} != (-1)^{{{}}} {} * {}",
                                    self.label(i, a),
                                    self.label(j, b),
                                    i * j,
                                    self.label(j, b),
                                    self.label(i, a)
                                ),
                            });
                        }
                    }
                }
            }
        }

        // associativity on all basis triples with total degree <= q+1
        for i in 0..=self.q + 1 {
            for j in 0..=self.q + 1 - i {
                for k in 0..=self.q + 1 - i - j {
                    for a in 0..self.dims[i] {
                        for b in 0..self.dims[j] {
                            for c in 0..self.dims[k] {
                                let ab = self.prod_basis(i, j, a, b);
                                let mut cvec = vec![Rat::zero(); self.dims[k]];
                                cvec[c] = Rat::one();
                                let lhs = self.prod_elem(i + j, k, &ab, &cvec);
                                let bc = self.prod_basis(j, k, b, c);
                                let mut avec = vec![Rat::zero(); self.dims[i]];
                                avec[a] = Rat::one();
                                let rhs = self.prod_elem(i, j + k, &avec, &bc);
                                if lhs != rhs {
                                    violations.push(Violation {
                                        axiom: Axiom::Associativity,
                                        degrees: vec![i, j, k],
                                        indices: vec![a, b, c],
                                        detail: format!(
                                            "({}*{})*{} != {}*({}*{})",
                                            self.label(i, a),
                                            self.label(j, b),
                                            self.label(k, c),
                                            self.label(i, a),
                                            self.label(j, b),
                                            self.label(k, c)
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }

        // Leibniz: d(ab) = (da)b + (-1)^i a(db), computable for i+j <= q
        for i in 0..=self.q {
            for j in 0..=self.q - i {
                for a in 0..self.dims[i] {
                    for b in 0..self.dims[j] {
                        let ab = self.prod_basis(i, j, a, b);
                        let lhs = self.d_elem(i + j, &ab);

                        let da = self.diff[i].col(a);
                        let mut bvec = vec![Rat::zero(); self.dims[j]];
                        bvec[b] = Rat::one();
                        let term1 = self.prod_elem(i + 1, j, &da, &bvec);

                        let db = self.diff[j].col(b);
                        let mut avec = vec![Rat::zero(); self.dims[i]];
                        avec[a] = Rat::one();
                        let mut term2 = self.prod_elem(i, j + 1, &avec, &db);
                        if i % 2 == 1 {
                            for c in term2.iter_mut() {
                                *c = -c.clone();
                            }
                        }

                        let rhs: Vec<Rat> =
                            term1.iter().zip(&term2).map(|(x, y)| x + y).collect();
                        if lhs != rhs {
                            violations.push(Violation {
                                axiom: Axiom::Leibniz,
                                degrees: vec![i, j],
                                indices: vec![a, b],
                                detail: format!(
                                    "d({}*{}) != d{}*{} + (-1)^{i} {}*d{}",
                                    self.label(i, a),
                                    self.label(j, b),
                                    self.label(i, a),
                                    self.label(j, b),
                                    self.label(i, a),
                                    self.label(j, b)
                                ),
                            });
                        }
                    }
                }
            }
        }

        // d o d = 0 in all stored degrees
        for i in 0..self.q {
            let composite = self.diff[i + 1].mul(&self.diff[i]);
            if !composite.is_zero() {
                violations.push(Violation {
                    axiom: Axiom::DifferentialSquare,
                    degrees: vec![i],
                    indices: vec![],
                    detail: format!("d^{} . d^{} != 0", i + 1, i),
                });
            }
        }

        ValidationReport { violations }
    }

    /// The underlying untwisted cochain complex (all stored degrees).
    pub fn complex(&self) -> CochainComplex {
        CochainComplex::new(self.dims.clone(), self.diff.clone())
            .expect("stored differentials compose to zero")
    }
}

/// Named algebra axioms, used in validation reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Connectedness,
    Unit,
    GradedCommutativity,
    Associativity,
    Leibniz,
    DifferentialSquare,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Axiom::Connectedness => "connectedness",
            Axiom::Unit => "unit",
            Axiom::GradedCommutativity => "graded-commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Leibniz => "leibniz",
            Axiom::DifferentialSquare => "differential-square",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub axiom: Axiom,
    pub degrees: Vec<usize>,
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_pass() {
            return write!(f, "pass");
        }
        writeln!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            writeln!(
                f,
                "  [{}] degrees {:?} indices {:?}: {}",
                v.axiom, v.degrees, v.indices, v.detail
            )?;
        }
        Ok(())
    }
}

/// A finite cochain complex: `dims[i]` in degree `i` and matrices
/// `deltas[i]: dims[i] -> dims[i+1]` with composite zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    deltas: Vec<Mat>,
}

impl CochainComplex {
    /// Checks shapes and the composite-zero invariant.
    pub fn new(dims: Vec<usize>, deltas: Vec<Mat>) -> Result<CochainComplex> {
        if dims.is_empty() {
            return Err(Error::Invalid("complex needs at least one degree".into()));
        }
        if deltas.len() + 1 != dims.len() {
            return Err(Error::Invalid(format!(
                "expected {} deltas for {} degrees, got {}",
                dims.len() - 1,
                dims.len(),
                deltas.len()
            )));
        }
        for (i, d) in deltas.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(Error::Invalid(format!(
                    "delta[{i}] must be {}x{}, got {}x{}",
                    dims[i + 1],
                    dims[i],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for i in 0..deltas.len().saturating_sub(1) {
            if !deltas[i + 1].mul(&deltas[i]).is_zero() {
                return Err(Error::BrokenComplex { at: i + 1 });
            }
        }
        Ok(CochainComplex { dims, deltas })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn deltas(&self) -> &[Mat] {
        &self.deltas
    }

    pub fn delta(&self, i: usize) -> &Mat {
        &self.deltas[i]
    }

    /// `dim ker deltas[i] - rank deltas[i-1]`; the map out of the top stored
    /// degree is treated as zero.
    pub fn cohomology_dim(&self, i: usize) -> Result<usize> {
        if i >= self.dims.len() {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                max: self.dims.len() - 1,
            });
        }
        let z = if i < self.deltas.len() {
            self.dims[i] - self.deltas[i].rank()
        } else {
            self.dims[i]
        };
        let b = if i == 0 { 0 } else { self.deltas[i - 1].rank() };
        Ok(z - b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::rint;

    #[test]
    fn exterior_one_generator_validates() {
        let a = fixtures::exterior(&["e"], 1);
        assert!(a.validate().is_pass());
        assert_eq!(a.dims(), &[1, 1, 0]);
    }

    #[test]
    fn solvable_model_validates() {
        let a = fixtures::solvable_model();
        assert!(a.validate().is_pass());
    }

    #[test]
    fn broken_leibniz_is_reported_by_name() {
        // perturb 1*y to 2y: d(1*y) = -2 x^y no longer matches
        // (d1)*y + 1*dy = -x^y
        let a = fixtures::solvable_model();
        let mut entries: Vec<MultEntry> = a.mult_entries().collect();
        for e in entries.iter_mut() {
            if (e.i, e.j, e.a, e.b) == (0, 1, 0, 1) {
                e.out = vec![(rint(2), 1)];
            }
        }
        let broken = Cdga::new(
            a.q(),
            a.dims().to_vec(),
            Some(a.labels().to_vec()),
            entries,
            a.diffs().to_vec(),
        )
        .unwrap();
        let report = broken.validate();
        assert!(!report.is_pass());
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::Leibniz));
    }

    #[test]
    fn betti_numbers_exterior_one_generator() {
        let a = fixtures::exterior(&["e"], 1);
        assert_eq!(a.cohomology_dim(0).unwrap(), 1);
        assert_eq!(a.cohomology_dim(1).unwrap(), 1);
    }

    #[test]
    fn betti_numbers_solvable_model() {
        let a = fixtures::solvable_model();
        assert_eq!(a.cohomology_dim(0).unwrap(), 1);
        assert_eq!(a.cohomology_dim(1).unwrap(), 1);
        // Z^2 = span(x^y) = im d^1, by direct elimination
        assert_eq!(a.cohomology_dim(2).unwrap(), 0);
    }

    #[test]
    fn degree_out_of_range_is_rejected() {
        let a = fixtures::exterior(&["e"], 1);
        assert!(matches!(
            a.cohomology_dim(2),
            Err(Error::DegreeOutOfRange { degree: 2, max: 1 })
        ));
    }

    #[test]
    fn closed_one_forms_zero_differential() {
        let a = fixtures::exterior(&["e1", "e2"], 2);
        assert_eq!(a.closed_one_forms().len(), 2);
    }

    #[test]
    fn closed_one_forms_solvable_model() {
        // dy = y^x, so only x survives
        let a = fixtures::solvable_model();
        let basis = a.closed_one_forms();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![rint(1), rint(0)]);
    }

    #[test]
    fn closed_one_forms_match_b1_on_connected_fixtures() {
        for a in [
            fixtures::exterior(&["e"], 1),
            fixtures::exterior(&["e1", "e2"], 2),
            fixtures::exterior(&["e1", "e2", "e3"], 3),
            fixtures::solvable_model(),
        ] {
            assert_eq!(a.closed_one_forms().len(), a.cohomology_dim(1).unwrap());
        }
    }

    #[test]
    fn complex_with_zero_deltas() {
        let c = CochainComplex::new(
            vec![1, 2, 1],
            vec![Mat::zeros(2, 1), Mat::zeros(1, 2)],
        )
        .unwrap();
        assert_eq!(c.cohomology_dim(0).unwrap(), 1);
        assert_eq!(c.cohomology_dim(1).unwrap(), 2);
        assert_eq!(c.cohomology_dim(2).unwrap(), 1);
    }

    #[test]
    fn complex_with_identity_delta() {
        let c = CochainComplex::new(vec![2, 2], vec![Mat::identity(2)]).unwrap();
        assert_eq!(c.cohomology_dim(0).unwrap(), 0);
        assert_eq!(c.cohomology_dim(1).unwrap(), 0);
    }

    #[test]
    fn complex_rank_bookkeeping() {
        let d0 = Mat::from_i64(&[&[1], &[0]]);
        let d1 = Mat::from_i64(&[&[0, 1]]);
        let c = CochainComplex::new(vec![1, 2, 1], vec![d0, d1]).unwrap();
        assert_eq!(c.cohomology_dim(1).unwrap(), 0);
    }

    #[test]
    fn broken_complex_is_rejected() {
        let d0 = Mat::from_i64(&[&[1], &[0]]);
        let d1 = Mat::from_i64(&[&[1, 0]]);
        assert_eq!(
            CochainComplex::new(vec![1, 2, 1], vec![d0, d1]).unwrap_err(),
            Error::BrokenComplex { at: 1 }
        );
    }

    #[test]
    fn euler_characteristic_on_full_zero_differential_fixtures() {
        for a in [
            fixtures::exterior(&["e"], 1),
            fixtures::exterior(&["e1", "e2"], 2),
            fixtures::exterior(&["e1", "e2", "e3"], 3),
        ] {
            let mut chi_betti = 0i64;
            let mut chi_dims = 0i64;
            for i in 0..=a.q() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                chi_betti += sign * a.cohomology_dim(i).unwrap() as i64;
            }
            for (i, &d) in a.dims().iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                chi_dims += sign * d as i64;
            }
            assert_eq!(chi_betti, chi_dims);
        }
    }

    #[test]
    fn degenerate_middle_degree_is_legal() {
        // dims (1, 1, 0, 1): degree-2 is zero, products into it must vanish
        let a = Cdga::new(
            2,
            vec![1, 1, 0, 1],
            None,
            fixtures::unit_mult_entries(&[1, 1, 0, 1]),
            vec![Mat::zeros(1, 1), Mat::zeros(0, 1), Mat::zeros(1, 0)],
        )
        .unwrap();
        assert!(a.validate().is_pass());
        assert_eq!(a.cohomology_dim(1).unwrap(), 1);
    }
}
