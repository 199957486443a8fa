//! Exact linear algebra over the rationals.
//!
//! Everything downstream (cohomology dimensions, kernel intersections,
//! membership tests) reduces to rank, kernel and determinant computations on
//! small dense matrices. All arithmetic is exact: entries are
//! arbitrary-precision rationals, rank and determinant go through
//! fraction-free (Bareiss) elimination on a denominator-cleared integer
//! matrix, and kernels come from a rational Gauss-Jordan reduction.
//! Pivoting is deterministic (first nonzero in column order) so elimination
//! traces are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored reduced, with positive denominator.
pub type Rat = num_rational::BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p/q" or "p". Rejects zero denominators instead of panicking.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(num, den))
}

/// Renders a rational as "p/q", or "p" when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from rows. Empty input yields a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in Mat::from_rows"
        );
        Mat {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    /// `ambient_dim` fixes the row count even when no columns are given.
    pub fn from_cols(ambient_dim: usize, cols: &[Vec<Rat>]) -> Self {
        for v in cols {
            assert_eq!(v.len(), ambient_dim, "column length mismatch");
        }
        Mat::from_fn(ambient_dim, cols.len(), |r, c| cols[c][r].clone())
    }

    /// Integer-entry convenience constructor, mainly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rint(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in Mat::mul");
        Mat::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                if !self.at(r, k).is_zero() && !other.at(k, c).is_zero() {
                    acc += self.at(r, k) * other.at(k, c);
                }
            }
            acc
        })
    }

    /// Applies the matrix to a column vector.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in Mat::mul_vec");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    if !self.at(r, c).is_zero() && !v[c].is_zero() {
                        acc += self.at(r, c) * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Copy of the `rows x cols` submatrix with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        Mat::from_fn(rows, cols, |r, c| self.at(r0 + r, c0 + c).clone())
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        Mat::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "col mismatch in vstack");
        Mat::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        })
    }

    /// Clears denominators row by row. Rescaling rows by nonzero rationals
    /// does not change rank or kernel; the per-row factors are returned so
    /// `det` can undo them.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut lcm = BigInt::one();
            for c in 0..self.cols {
                let d = self.at(r, c).denom();
                lcm = lcm.lcm(d);
            }
            let row: Vec<BigInt> = (0..self.cols)
                .map(|c| {
                    let e = self.at(r, c);
                    e.numer() * (&lcm / e.denom())
                })
                .collect();
            out.push(row);
            scales.push(lcm);
        }
        (out, scales)
    }

    /// Rank over the rationals, by fraction-free (Bareiss) elimination with
    /// first-nonzero pivoting.
    pub fn rank(&self) -> usize {
        let (mut m, _) = self.integer_rows();
        bareiss(&mut m, self.rows, self.cols).rank
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Rat::one());
        }
        let (mut m, scales) = self.integer_rows();
        let elim = bareiss(&mut m, self.rows, self.cols);
        if elim.rank < self.rows {
            return Ok(Rat::zero());
        }
        let mut denom = BigInt::one();
        for s in scales {
            denom *= s;
        }
        let num = if elim.swaps % 2 == 0 {
            elim.last_pivot
        } else {
            -elim.last_pivot
        };
        Ok(Rat::new(num, denom))
    }

    /// Basis of the right kernel, as column vectors. Rational Gauss-Jordan;
    /// returns `cols - rank` vectors (empty when injective).
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (rref, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            // column -> pivot row
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -rref.at(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = rhs`, if the system is consistent.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, rhs.len(), "rhs length mismatch in solve");
        let aug = self.hstack(&Mat::from_cols(self.rows, &[rhs.to_vec()]));
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = rref.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Reduced row-echelon form together with the pivot columns (one per
    /// pivot row, in order).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let a = m.at(p, c).clone();
                    let b = m.at(row, c).clone();
                    *m.at_mut(p, c) = b;
                    *m.at_mut(row, c) = a;
                }
            }
            let inv = m.at(row, col).clone().recip();
            for c in col..m.cols {
                let v = m.at(row, c) * &inv;
                *m.at_mut(row, c) = v;
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c) - &(m.at(row, c) * &f);
                    *m.at_mut(r, c) = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }
}

struct Elimination {
    rank: usize,
    swaps: usize,
    last_pivot: BigInt,
}

/// Fraction-free elimination on an integer matrix. Pivot choice is the first
/// nonzero entry in column order, so runs are reproducible.
fn bareiss(m: &mut [Vec<BigInt>], rows: usize, cols: usize) -> Elimination {
    let mut row = 0usize;
    let mut swaps = 0usize;
    let mut prev = BigInt::one();
    let mut last_pivot = BigInt::one();
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if p != row {
            m.swap(p, row);
            swaps += 1;
        }
        for i in row + 1..rows {
            for j in col + 1..cols {
                let t = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                // exact by the Bareiss identity
                m[i][j] = t / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        last_pivot = prev.clone();
        row += 1;
    }
    Elimination {
        rank: row,
        swaps,
        last_pivot,
    }
}

/// Dimension of Z/B for column spans B = span(sub), Z = span(amb_kernel),
/// assuming B is contained in Z. Returns [`Error::NotContained`] otherwise,
/// which signals a broken chain complex upstream.
pub fn image_dim_in_quotient(sub: &Mat, amb_kernel: &Mat) -> Result<usize> {
    if sub.rows() != amb_kernel.rows() {
        return Err(Error::ShapeMismatch(format!(
            "ambient dimensions differ: {} vs {}",
            sub.rows(),
            amb_kernel.rows()
        )));
    }
    let rank_z = amb_kernel.rank();
    let rank_b = sub.rank();
    if amb_kernel.hstack(sub).rank() != rank_z {
        return Err(Error::NotContained);
    }
    Ok(rank_z - rank_b)
}

/// Rank of the joint column span of two matrices with the same row count.
pub fn joint_column_rank(a: &Mat, b: &Mat) -> usize {
    a.hstack(b).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(Mat::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn rank_identity() {
        assert_eq!(Mat::identity(3).rank(), 3);
    }

    #[test]
    fn rank_dependent_rows() {
        // hand elimination: row2 = 2*row1
        let m = Mat::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Mat::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_difference_functional() {
        let m = Mat::from_i64(&[&[1, -1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![rint(1), rint(1)]);
    }

    #[test]
    fn kernel_of_dependent_rows() {
        // x + 2y = 0, solved by hand: (-2, 1), proportional to (2, -1)
        let m = Mat::from_i64(&[&[1, 2], &[2, 4]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![rint(-2), rint(1)]);
    }

    #[test]
    fn det_identity() {
        for n in 0..5 {
            assert_eq!(Mat::identity(n).det().unwrap(), Rat::one());
        }
    }

    #[test]
    fn det_singular_diag() {
        let m = Mat::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(m.det().unwrap(), Rat::zero());
    }

    #[test]
    fn det_two_by_two() {
        // cofactor expansion: 2*1 - 1*1 = 1
        let m = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det().unwrap(), rint(1));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = Mat::zeros(2, 3);
        assert_eq!(
            m.det().unwrap_err(),
            Error::NonSquare { rows: 2, cols: 3 }
        );
    }

    #[test]
    fn det_rational_entries() {
        let m = Mat::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ]);
        // 1/10 - 1/12 = 1/60
        assert_eq!(m.det().unwrap(), rat(1, 60));
    }

    #[test]
    fn quotient_full_space() {
        let b = Mat::zeros(3, 0);
        let z = Mat::identity(3);
        assert_eq!(image_dim_in_quotient(&b, &z).unwrap(), 3);
    }

    #[test]
    fn quotient_equal_spans() {
        let z = Mat::identity(2);
        assert_eq!(image_dim_in_quotient(&z, &z).unwrap(), 0);
    }

    #[test]
    fn quotient_dimension_count() {
        let z = Mat::identity(2);
        let b = Mat::from_i64(&[&[1], &[1]]);
        assert_eq!(image_dim_in_quotient(&b, &z).unwrap(), 1);
    }

    #[test]
    fn quotient_detects_escape() {
        let z = Mat::from_i64(&[&[1], &[0]]);
        let b = Mat::from_i64(&[&[0], &[1]]);
        assert_eq!(image_dim_in_quotient(&b, &z).unwrap_err(), Error::NotContained);
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/3", "0", "12", "-5"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("3/-4").unwrap(), rat(-3, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_mat(max_dim: usize) -> impl Strategy<Value = Mat> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::vec(arb_rat(), r * c).prop_map(move |entries| Mat {
                rows: r,
                cols: c,
                entries,
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_mat(5)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        }

        #[test]
        fn rank_transpose_invariant(m in arb_mat(5)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn det_nonzero_iff_full_rank(m in arb_mat(4)) {
            prop_assume!(m.rows() == m.cols());
            let d = m.det().unwrap();
            prop_assert_eq!(!d.is_zero(), m.rank() == m.rows());
        }

        #[test]
        fn rank_invariant_under_row_rescale(m in arb_mat(4), num in 1i64..=7, den in 1i64..=7) {
            let mut scaled = m.clone();
            let s = rat(num, den);
            for c in 0..scaled.cols() {
                let v = scaled.at(0, c) * &s;
                *scaled.at_mut(0, c) = v;
            }
            prop_assert_eq!(m.rank(), scaled.rank());
        }

        #[test]
        fn kernel_vectors_are_killed(m in arb_mat(5)) {
            for v in m.kernel_basis() {
                let image = m.mul_vec(&v);
                prop_assert!(image.iter().all(|x| x.is_zero()));
            }
        }
    }
}
