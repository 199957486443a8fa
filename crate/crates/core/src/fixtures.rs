//! Built-in desk-scale fixtures: exterior algebras on degree-1 generators
//! and the two-generator model with `dx = 0`, `dy = y^x` whose holonomy Lie
//! algebra is the solvable algebra `[a,b] = b`.
//!
//! Basis convention for exterior algebras: the degree-`k` basis is the set of
//! `k`-element subsets of the generators, in lexicographic order; products
//! carry the sign of the merge permutation.

use crate::cdga::{Cdga, MultEntry};
use crate::linalg::{rint, Mat, Rat};

/// Unit-row product entries for a dims vector: `1 * a = a = a * 1`.
pub fn unit_mult_entries(dims: &[usize]) -> Vec<MultEntry> {
    let mut entries = Vec::new();
    for (j, &d) in dims.iter().enumerate() {
        for b in 0..d {
            entries.push(MultEntry {
                i: 0,
                j,
                a: 0,
                b,
                out: vec![(rint(1), b)],
            });
            if j > 0 {
                entries.push(MultEntry {
                    i: j,
                    j: 0,
                    a: b,
                    b: 0,
                    out: vec![(rint(1), b)],
                });
            }
        }
    }
    entries
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // next k-combination of 0..n in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sign of merging two disjoint increasing index sets, counting inversions.
fn merge_sign(left: &[usize], right: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for &l in left {
        for &r in right {
            if l > r {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exterior algebra on degree-1 generators with zero differential, stored
/// through degree `q+1`.
pub fn exterior_q(gens: &[&str], q: usize) -> Cdga {
    let n = gens.len();
    assert!(q >= 1, "truncation must be at least 1");
    let mut basis: Vec<Vec<Vec<usize>>> = Vec::new();
    for k in 0..=q + 1 {
        basis.push(subsets(n, k));
    }
    let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
    let labels: Vec<Vec<String>> = basis
        .iter()
        .enumerate()
        .map(|(k, bs)| {
            bs.iter()
                .map(|s| {
                    if k == 0 {
                        "1".to_string()
                    } else {
                        s.iter()
                            .map(|&g| gens[g].to_string())
                            .collect::<Vec<_>>()
                            .join("^")
                    }
                })
                .collect()
        })
        .collect();

    let index_of = |k: usize, s: &[usize]| -> usize {
        basis[k].iter().position(|t| t == s).expect("basis subset")
    };

    let mut entries = unit_mult_entries(&dims);
    for i in 1..=q {
        for j in 1..=q + 1 - i {
            for (a, sa) in basis[i].iter().enumerate() {
                for (b, sb) in basis[j].iter().enumerate() {
                    if sa.iter().any(|g| sb.contains(g)) {
                        continue;
                    }
                    let mut merged: Vec<usize> = sa.iter().chain(sb.iter()).copied().collect();
                    let sign = merge_sign(sa, sb);
                    merged.sort_unstable();
                    if i + j < dims.len() && dims[i + j] > 0 {
                        entries.push(MultEntry {
                            i,
                            j,
                            a,
                            b,
                            out: vec![(rint(sign), index_of(i + j, &merged))],
                        });
                    }
                }
            }
        }
    }

    let diff: Vec<Mat> = (0..=q).map(|i| Mat::zeros(dims[i + 1], dims[i])).collect();
    Cdga::new(q, dims, Some(labels), entries, diff).expect("exterior algebra is well-formed")
}

/// Exterior algebra truncated one degree past its top (`q` = number of
/// generators, or 1 for the trivial case).
pub fn exterior(gens: &[&str], q: usize) -> Cdga {
    exterior_q(gens, q)
}

/// The connected algebra with only a degree-0 piece (unit of the tensor
/// product), stored with truncation `q`.
pub fn trivial_q(q: usize) -> Cdga {
    let mut dims = vec![0usize; q + 2];
    dims[0] = 1;
    let diff: Vec<Mat> = (0..=q).map(|i| Mat::zeros(dims[i + 1], dims[i])).collect();
    Cdga::new(q, dims.clone(), None, unit_mult_entries(&dims), diff)
        .expect("trivial algebra is well-formed")
}

/// Exterior algebra on `x, y` with `dx = 0` and `dy = y^x = -x^y`, stored
/// through degree 3 (q = 2). Its holonomy Lie algebra is solvable:
/// `[x, y] = y` after dualizing.
pub fn solvable_model() -> Cdga {
    solvable_model_q(2)
}

/// Same algebra with a caller-chosen truncation (`q >= 1`).
pub fn solvable_model_q(q: usize) -> Cdga {
    assert!(q >= 1);
    let base = exterior_q(&["x", "y"], q);
    let mut diff: Vec<Mat> = base.diffs().to_vec();
    // dy = y^x = -x^y
    if base.dim(2) > 0 {
        let mut d1 = Mat::zeros(base.dim(2), base.dim(1));
        *d1.at_mut(0, 1) = -Rat::from_integer(1.into());
        diff[1] = d1;
    }
    Cdga::new(
        base.q(),
        base.dims().to_vec(),
        Some(base.labels().to_vec()),
        base.mult_entries().collect(),
        diff,
    )
    .expect("solvable model is well-formed")
}

/// Connection coefficient matrix with a single nonzero entry.
pub fn single_entry_coeffs(rows: usize, cols: usize, r: usize, c: usize, value: Rat) -> Mat {
    let mut m = Mat::zeros(rows, cols);
    *m.at_mut(r, c) = value;
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_dims() {
        assert_eq!(exterior(&["e"], 1).dims(), &[1, 1, 0]);
        assert_eq!(exterior(&["e1", "e2"], 2).dims(), &[1, 2, 1, 0]);
        assert_eq!(exterior(&["e1", "e2", "e3"], 3).dims(), &[1, 3, 3, 1, 0]);
    }

    #[test]
    fn exterior_validates() {
        for a in [
            exterior(&["e"], 1),
            exterior_q(&["e"], 2),
            exterior(&["e1", "e2"], 2),
            exterior(&["e1", "e2", "e3"], 3),
            trivial_q(2),
        ] {
            let report = a.validate();
            assert!(report.is_pass(), "{report}");
        }
    }

    #[test]
    fn exterior_product_signs() {
        let a = exterior(&["e1", "e2", "e3"], 3);
        // e2 * e1 = -e1^e2
        let p = a.prod_basis(1, 1, 1, 0);
        assert_eq!(p, vec![rint(-1), rint(0), rint(0)]);
        // e1^e2 * e3 = e1^e2^e3
        let p = a.prod_basis(2, 1, 0, 2);
        assert_eq!(p, vec![rint(1)]);
        // e1^e3 * e2 = -e1^e2^e3 (one inversion: 3 > 2)
        let p = a.prod_basis(2, 1, 1, 1);
        assert_eq!(p, vec![rint(-1)]);
    }

    #[test]
    fn solvable_model_differential() {
        let a = solvable_model();
        assert!(a.validate().is_pass());
        assert_eq!(a.d_elem(1, &[rint(0), rint(1)]), vec![rint(-1)]);
        assert_eq!(a.d_elem(1, &[rint(1), rint(0)]), vec![rint(0)]);
    }
}
