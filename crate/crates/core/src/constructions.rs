//! Tensor products and wedge sums of connected CDGAs, with explicit basis
//! identifications, connection splitting/merging across both constructions,
//! and the trichotomy classifier for flat connections on products.
//!
//! Basis of a tensor product in degree `n`: all triples
//! `(i, left index, right index)` with left degree `i` and right degree
//! `n - i`, ordered lexicographically by `(i, left, right)`. In degree 1
//! this puts the right factor's generators first (they have `i = 0`).
//! Basis of a wedge in positive degree `n`: the left degree-`n` basis
//! followed by the right one. Witness types carry these identifications so
//! nothing downstream depends on implicit ordering.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::cdga::{Cdga, MultEntry};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Rat};

/// Tensor-product algebra with its degree-wise basis identification.
#[derive(Clone, Debug)]
pub struct ProductWitness {
    pub product: Arc<Cdga>,
    pub left: Arc<Cdga>,
    pub right: Arc<Cdga>,
    /// degree -> flat index -> (left degree, left index, right index)
    index: Vec<Vec<(usize, usize, usize)>>,
    lookup: Vec<BTreeMap<(usize, usize, usize), usize>>,
}

/// Wedge-sum algebra with its degree-wise block identification.
#[derive(Clone, Debug)]
pub struct WedgeWitness {
    pub wedge: Arc<Cdga>,
    pub left: Arc<Cdga>,
    pub right: Arc<Cdga>,
}

/// Combines factor labels, eliding the unit.
fn combine_label(left_deg: usize, l: &str, right_deg: usize, r: &str) -> String {
    match (left_deg, right_deg) {
        (0, 0) => "1".to_string(),
        (_, 0) => l.to_string(),
        (0, _) => r.to_string(),
        _ => format!("{l}⊗{r}"),
    }
}

/// Tensor product truncated at `min(q, q̄)`.
pub fn tensor_product(a: &Arc<Cdga>, abar: &Arc<Cdga>) -> Result<ProductWitness> {
    tensor_product_truncated(a, abar, a.q().min(abar.q()))
}

/// Tensor product with an explicit truncation, which may not exceed either
/// factor's.
pub fn tensor_product_truncated(
    a: &Arc<Cdga>,
    abar: &Arc<Cdga>,
    q: usize,
) -> Result<ProductWitness> {
    let available = a.q().min(abar.q());
    if q > available {
        return Err(Error::TruncationMismatch {
            requested: q,
            available,
        });
    }

    let mut index: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(q + 2);
    let mut lookup: Vec<BTreeMap<(usize, usize, usize), usize>> = Vec::with_capacity(q + 2);
    for n in 0..=q + 1 {
        let mut basis = Vec::new();
        for i in 0..=n {
            let j = n - i;
            for l in 0..a.dim(i) {
                for r in 0..abar.dim(j) {
                    basis.push((i, l, r));
                }
            }
        }
        let map: BTreeMap<(usize, usize, usize), usize> = basis
            .iter()
            .enumerate()
            .map(|(flat, &key)| (key, flat))
            .collect();
        index.push(basis);
        lookup.push(map);
    }

    let dims: Vec<usize> = index.iter().map(|b| b.len()).collect();
    let labels: Vec<Vec<String>> = index
        .iter()
        .enumerate()
        .map(|(n, basis)| {
            basis
                .iter()
                .map(|&(i, l, r)| combine_label(i, a.label(i, l), n - i, abar.label(n - i, r)))
                .collect()
        })
        .collect();

    // multiplication with the Koszul sign (-1)^{|abar| |b|}
    let mut entries: Vec<MultEntry> = Vec::new();
    for n1 in 0..=q + 1 {
        for n2 in 0..=q + 1 - n1 {
            for (f1, &(i1, l1, r1)) in index[n1].iter().enumerate() {
                let j1 = n1 - i1;
                for (f2, &(i2, l2, r2)) in index[n2].iter().enumerate() {
                    let j2 = n2 - i2;
                    let left = a.prod_basis(i1, i2, l1, l2);
                    let right = abar.prod_basis(j1, j2, r1, r2);
                    let negate = (j1 * i2) % 2 == 1;
                    let mut out = Vec::new();
                    for (m, lc) in left.iter().enumerate() {
                        if lc.is_zero() {
                            continue;
                        }
                        for (mbar, rc) in right.iter().enumerate() {
                            if rc.is_zero() {
                                continue;
                            }
                            let mut c = lc * rc;
                            if negate {
                                c = -c;
                            }
                            let flat = lookup[n1 + n2][&(i1 + i2, m, mbar)];
                            out.push((c, flat));
                        }
                    }
                    if !out.is_empty() {
                        entries.push(MultEntry {
                            i: n1,
                            j: n2,
                            a: f1,
                            b: f2,
                            out,
                        });
                    }
                }
            }
        }
    }

    // differential D(a (x) abar) = da (x) abar + (-1)^{|a|} a (x) dbar abar
    let mut diff: Vec<Mat> = Vec::with_capacity(q + 1);
    for n in 0..=q {
        let mut d = Mat::zeros(dims[n + 1], dims[n]);
        for (flat, &(i, l, r)) in index[n].iter().enumerate() {
            let j = n - i;
            let da = a.d(i).col(l);
            for (m, c) in da.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let row = lookup[n + 1][&(i + 1, m, r)];
                let val = d.at(row, flat) + c;
                *d.at_mut(row, flat) = val;
            }
            let dbar = abar.d(j).col(r);
            for (mbar, c) in dbar.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let row = lookup[n + 1][&(i, l, mbar)];
                let signed = if i % 2 == 1 { -c.clone() } else { c.clone() };
                let val = d.at(row, flat) + &signed;
                *d.at_mut(row, flat) = val;
            }
        }
        diff.push(d);
    }

    let product = Cdga::new(q, dims, Some(labels), entries, diff)?;
    let report = product.validate();
    if !report.is_pass() {
        return Err(Error::Invalid(format!(
            "constructed tensor product fails validation: {report}"
        )));
    }
    Ok(ProductWitness {
        product: Arc::new(product),
        left: a.clone(),
        right: abar.clone(),
        index,
        lookup,
    })
}

impl ProductWitness {
    /// Flat basis index of `(left degree, left index, right index)` in
    /// degree `n`.
    pub fn flat_index(&self, n: usize, i: usize, l: usize, r: usize) -> usize {
        self.lookup[n][&(i, l, r)]
    }

    pub fn triple(&self, n: usize, flat: usize) -> (usize, usize, usize) {
        self.index[n][flat]
    }

    /// Degree-1 index of the left generator `a_l (x) 1`.
    pub fn left_gen(&self, l: usize) -> usize {
        self.flat_index(1, 1, l, 0)
    }

    /// Degree-1 index of the right generator `1 (x) abar_r`.
    pub fn right_gen(&self, r: usize) -> usize {
        self.flat_index(1, 0, 0, r)
    }

    /// Splits a connection on the product into its factor components under
    /// the degree-1 identification.
    pub fn split_connection(&self, omega: &Connection) -> Result<(Connection, Connection)> {
        if omega.cdga.as_ref() != self.product.as_ref() {
            return Err(Error::ShapeMismatch(
                "connection does not live on this product".into(),
            ));
        }
        let lie = omega.lie.clone();
        let left_coeffs = Mat::from_fn(self.left.dim(1), lie.dim(), |l, k| {
            omega.coeffs().at(self.left_gen(l), k).clone()
        });
        let right_coeffs = Mat::from_fn(self.right.dim(1), lie.dim(), |r, k| {
            omega.coeffs().at(self.right_gen(r), k).clone()
        });
        Ok((
            Connection::new(self.left.clone(), lie.clone(), left_coeffs)?,
            Connection::new(self.right.clone(), lie, right_coeffs)?,
        ))
    }

    /// Inverse of [`split_connection`].
    ///
    /// [`split_connection`]: ProductWitness::split_connection
    pub fn merge_connection(&self, left: &Connection, right: &Connection) -> Result<Connection> {
        if left.cdga.as_ref() != self.left.as_ref() || right.cdga.as_ref() != self.right.as_ref()
        {
            return Err(Error::ShapeMismatch(
                "components do not live on the factors".into(),
            ));
        }
        if left.lie.as_ref() != right.lie.as_ref() {
            return Err(Error::ShapeMismatch(
                "components target different Lie algebras".into(),
            ));
        }
        let lie = left.lie.clone();
        let mut coeffs = Mat::zeros(self.product.dim(1), lie.dim());
        for l in 0..self.left.dim(1) {
            for k in 0..lie.dim() {
                *coeffs.at_mut(self.left_gen(l), k) = left.coeffs().at(l, k).clone();
            }
        }
        for r in 0..self.right.dim(1) {
            for k in 0..lie.dim() {
                *coeffs.at_mut(self.right_gen(r), k) = right.coeffs().at(r, k).clone();
            }
        }
        Connection::new(self.product.clone(), lie, coeffs)
    }
}

/// Wedge sum truncated at `min(q, q̄)`: degree 0 is the shared unit,
/// positive degrees are direct sums with vanishing cross products.
pub fn wedge_sum(a: &Arc<Cdga>, abar: &Arc<Cdga>) -> Result<WedgeWitness> {
    let q = a.q().min(abar.q());

    let mut dims = vec![0usize; q + 2];
    dims[0] = 1;
    for n in 1..=q + 1 {
        dims[n] = a.dim(n) + abar.dim(n);
    }
    let mut labels: Vec<Vec<String>> = vec![vec!["1".to_string()]];
    for n in 1..=q + 1 {
        let mut row: Vec<String> = a.labels()[n].clone();
        row.extend(abar.labels()[n].iter().cloned());
        labels.push(row);
    }

    let mut entries = crate::fixtures::unit_mult_entries(&dims);
    for i in 1..=q {
        for j in 1..=q + 1 - i {
            // within the left factor
            for l1 in 0..a.dim(i) {
                for l2 in 0..a.dim(j) {
                    let prod = a.prod_basis(i, j, l1, l2);
                    let out: Vec<(Rat, usize)> = prod
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(m, c)| (c.clone(), m))
                        .collect();
                    if !out.is_empty() {
                        entries.push(MultEntry {
                            i,
                            j,
                            a: l1,
                            b: l2,
                            out,
                        });
                    }
                }
            }
            // within the right factor, offset past the left blocks
            for r1 in 0..abar.dim(i) {
                for r2 in 0..abar.dim(j) {
                    let prod = abar.prod_basis(i, j, r1, r2);
                    let out: Vec<(Rat, usize)> = prod
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(m, c)| (c.clone(), a.dim(i + j) + m))
                        .collect();
                    if !out.is_empty() {
                        entries.push(MultEntry {
                            i,
                            j,
                            a: a.dim(i) + r1,
                            b: a.dim(j) + r2,
                            out,
                        });
                    }
                }
            }
            // cross products A+ . Abar+ are zero: omitted entries
        }
    }

    let mut diff: Vec<Mat> = Vec::with_capacity(q + 1);
    for n in 0..=q {
        let mut d = Mat::zeros(dims[n + 1], dims[n]);
        if n >= 1 {
            for c in 0..a.dim(n) {
                for r in 0..a.dim(n + 1) {
                    *d.at_mut(r, c) = a.d(n).at(r, c).clone();
                }
            }
            for c in 0..abar.dim(n) {
                for r in 0..abar.dim(n + 1) {
                    *d.at_mut(a.dim(n + 1) + r, a.dim(n) + c) = abar.d(n).at(r, c).clone();
                }
            }
        }
        diff.push(d);
    }

    let wedge = Cdga::new(q, dims, Some(labels), entries, diff)?;
    let report = wedge.validate();
    if !report.is_pass() {
        return Err(Error::Invalid(format!(
            "constructed wedge sum fails validation: {report}"
        )));
    }
    Ok(WedgeWitness {
        wedge: Arc::new(wedge),
        left: a.clone(),
        right: abar.clone(),
    })
}

impl WedgeWitness {
    /// Degree-`n` index of the left factor's basis element `l`.
    pub fn left_index(&self, n: usize, l: usize) -> usize {
        assert!(n >= 1 && l < self.left.dim(n));
        l
    }

    /// Degree-`n` index of the right factor's basis element `r`.
    pub fn right_index(&self, n: usize, r: usize) -> usize {
        assert!(n >= 1 && r < self.right.dim(n));
        self.left.dim(n) + r
    }

    pub fn split_connection(&self, omega: &Connection) -> Result<(Connection, Connection)> {
        if omega.cdga.as_ref() != self.wedge.as_ref() {
            return Err(Error::ShapeMismatch(
                "connection does not live on this wedge".into(),
            ));
        }
        let lie = omega.lie.clone();
        let left_coeffs = Mat::from_fn(self.left.dim(1), lie.dim(), |l, k| {
            omega.coeffs().at(self.left_index(1, l), k).clone()
        });
        let right_coeffs = Mat::from_fn(self.right.dim(1), lie.dim(), |r, k| {
            omega.coeffs().at(self.right_index(1, r), k).clone()
        });
        Ok((
            Connection::new(self.left.clone(), lie.clone(), left_coeffs)?,
            Connection::new(self.right.clone(), lie, right_coeffs)?,
        ))
    }

    pub fn merge_connection(&self, left: &Connection, right: &Connection) -> Result<Connection> {
        if left.cdga.as_ref() != self.left.as_ref() || right.cdga.as_ref() != self.right.as_ref()
        {
            return Err(Error::ShapeMismatch(
                "components do not live on the factors".into(),
            ));
        }
        if left.lie.as_ref() != right.lie.as_ref() {
            return Err(Error::ShapeMismatch(
                "components target different Lie algebras".into(),
            ));
        }
        let lie = left.lie.clone();
        let coeffs = left.coeffs().vstack(right.coeffs());
        Connection::new(self.wedge.clone(), lie, coeffs)
    }
}

/// Trichotomy families for flat connections on a tensor product with
/// target `sl2` or `sol2`: supported on the left factor, supported on the
/// right factor, or essentially rank one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrichotomyFamily {
    LeftOnly,
    RightOnly,
    RankOne,
}

impl std::fmt::Display for TrichotomyFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            TrichotomyFamily::LeftOnly => "left-only",
            TrichotomyFamily::RightOnly => "right-only",
            TrichotomyFamily::RankOne => "rank-one",
        };
        f.write_str(name)
    }
}

/// Classifies a flat connection on a product into exactly one family.
/// Rank-one takes priority, so one-sided connections of rank at most one
/// land there. A flat connection fitting no family would contradict the
/// trichotomy and is reported as [`Error::ClassificationFailure`].
pub fn trichotomy_classify(w: &ProductWitness, omega: &Connection) -> Result<TrichotomyFamily> {
    match omega.lie.name() {
        "sl2" | "sol2" => {}
        other => {
            return Err(Error::HypothesisUnmet(format!(
                "trichotomy holds for sl2 and sol2, not `{other}`"
            )))
        }
    }
    if !omega.is_flat() {
        return Err(Error::NotFlat);
    }
    if omega.is_essentially_rank_one() {
        return Ok(TrichotomyFamily::RankOne);
    }
    let (left, right) = w.split_connection(omega)?;
    if right.is_zero() {
        return Ok(TrichotomyFamily::LeftOnly);
    }
    if left.is_zero() {
        return Ok(TrichotomyFamily::RightOnly);
    }
    Err(Error::ClassificationFailure)
}

/// The presentation prediction for a tensor product: both factors'
/// relations transported through the index maps, plus one cross relation
/// `[x, xbar] = 0` per generator pair.
pub fn predicted_product_presentation(
    w: &ProductWitness,
) -> crate::connection::HolonomyPresentation {
    use crate::connection::HolonomyPresentation;
    let left_p = crate::connection::holonomy_presentation(&w.left);
    let right_p = crate::connection::holonomy_presentation(&w.right);
    let gens = w.product.dim(1);
    let rels = w.product.dim(2);
    let mut rel_linear = Mat::zeros(rels, gens);
    let mut rel_quadratic = vec![Mat::zeros(gens, gens); rels];
    for m in 0..rels {
        let (i, l, r) = w.triple(2, m);
        match i {
            // dual to 1 (x) abar^2: the right factor's relation
            0 => {
                for rj in 0..right_p.gens {
                    *rel_linear.at_mut(m, w.right_gen(rj)) =
                        right_p.rel_linear.at(r, rj).clone();
                }
                for rj in 0..right_p.gens {
                    for rk in rj + 1..right_p.gens {
                        let c = right_p.rel_quadratic[r].at(rj, rk).clone();
                        if !c.is_zero() {
                            *rel_quadratic[m].at_mut(w.right_gen(rj), w.right_gen(rk)) =
                                c.clone();
                            *rel_quadratic[m].at_mut(w.right_gen(rk), w.right_gen(rj)) = -c;
                        }
                    }
                }
            }
            // dual to a^1 (x) abar^1: cross relation [x_l, xbar_r] = 0.
            // With right generators listed first and the pairing convention
            // (j < k), the stored coefficient sits at (right, left) with
            // sign -1.
            1 => {
                let jr = w.right_gen(r);
                let kl = w.left_gen(l);
                *rel_quadratic[m].at_mut(jr, kl) = -Rat::from_integer(1.into());
                *rel_quadratic[m].at_mut(kl, jr) = Rat::from_integer(1.into());
            }
            // dual to a^2 (x) 1: the left factor's relation
            2 => {
                for lj in 0..left_p.gens {
                    *rel_linear.at_mut(m, w.left_gen(lj)) = left_p.rel_linear.at(l, lj).clone();
                }
                for lj in 0..left_p.gens {
                    for lk in lj + 1..left_p.gens {
                        let c = left_p.rel_quadratic[l].at(lj, lk).clone();
                        if !c.is_zero() {
                            *rel_quadratic[m].at_mut(w.left_gen(lj), w.left_gen(lk)) = c.clone();
                            *rel_quadratic[m].at_mut(w.left_gen(lk), w.left_gen(lj)) = -c;
                        }
                    }
                }
            }
            _ => unreachable!("degree-2 triple has left degree at most 2"),
        }
    }
    HolonomyPresentation {
        gens,
        labels: w.product.labels()[1].clone(),
        rel_linear,
        rel_quadratic,
    }
}

/// The prediction for a wedge sum: the union of both factors' relations,
/// with no cross relations.
pub fn predicted_wedge_presentation(w: &WedgeWitness) -> crate::connection::HolonomyPresentation {
    use crate::connection::HolonomyPresentation;
    let left_p = crate::connection::holonomy_presentation(&w.left);
    let right_p = crate::connection::holonomy_presentation(&w.right);
    let gens = w.wedge.dim(1);
    let rels = w.wedge.dim(2);
    let mut rel_linear = Mat::zeros(rels, gens);
    let mut rel_quadratic = vec![Mat::zeros(gens, gens); rels];
    for m in 0..left_p.relations() {
        for j in 0..left_p.gens {
            *rel_linear.at_mut(m, w.left_index(1, j)) = left_p.rel_linear.at(m, j).clone();
        }
        for j in 0..left_p.gens {
            for k in j + 1..left_p.gens {
                let c = left_p.rel_quadratic[m].at(j, k).clone();
                if !c.is_zero() {
                    *rel_quadratic[m].at_mut(w.left_index(1, j), w.left_index(1, k)) = c.clone();
                    *rel_quadratic[m].at_mut(w.left_index(1, k), w.left_index(1, j)) = -c;
                }
            }
        }
    }
    for m in 0..right_p.relations() {
        let row = left_p.relations() + m;
        for j in 0..right_p.gens {
            *rel_linear.at_mut(row, w.right_index(1, j)) = right_p.rel_linear.at(m, j).clone();
        }
        for j in 0..right_p.gens {
            for k in j + 1..right_p.gens {
                let c = right_p.rel_quadratic[m].at(j, k).clone();
                if !c.is_zero() {
                    *rel_quadratic[row].at_mut(w.right_index(1, j), w.right_index(1, k)) =
                        c.clone();
                    *rel_quadratic[row].at_mut(w.right_index(1, k), w.right_index(1, j)) = -c;
                }
            }
        }
    }
    HolonomyPresentation {
        gens,
        labels: w.wedge.labels()[1].clone(),
        rel_linear,
        rel_quadratic,
    }
}
