//! JSON fixture formats.
//!
//! All rationals serialize as strings: `"p/q"`, or `"p"` when the
//! denominator is one. Serialization is deterministic (entries in sorted
//! order), and parsing a serialized value reproduces the original datum
//! exactly.
//!
//! CDGA schema:
//!
//! ```json
//! {
//!   "q": 2,
//!   "dims": [1, 2, 1, 0],
//!   "labels": [["1"], ["x", "y"], ["x^y"], []],
//!   "mult": [ {"i":1, "j":1, "a":0, "b":1, "out":[["1", 0]]}, ... ],
//!   "diff": [ [["0"],["0"]], [["0","-1"]], [] ]
//! }
//! ```
//!
//! `diff[i]` is the matrix of `d^i` as rows (`dims[i+1]` rows of `dims[i]`
//! entries; an empty list denotes a map into or out of a zero space).
//! Omitted `mult` entries are zero, including the unit products, so valid
//! fixtures list `1 * a = a` explicitly.
//!
//! Lie algebras mirror the same conventions with sparse bracket triples;
//! connections are bare coefficient matrices.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cdga::{Cdga, MultEntry};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Representation};
use crate::linalg::{format_rat, parse_rat, Mat, Rat};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CdgaDoc {
    pub q: usize,
    pub dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
    pub mult: Vec<MultEntryDoc>,
    pub diff: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MultEntryDoc {
    pub i: usize,
    pub j: usize,
    pub a: usize,
    pub b: usize,
    pub out: Vec<(String, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LieDoc {
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub bracket: Vec<BracketEntryDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BracketEntryDoc {
    pub i: usize,
    pub j: usize,
    pub out: Vec<(String, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RepDoc {
    pub v_dim: usize,
    pub mats: Vec<Vec<Vec<String>>>,
}

/// A Lie algebra together with a representation, the unit the CLI loads.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LieRepDoc {
    pub lie: LieDoc,
    pub rep: RepDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConnectionDoc {
    pub coeffs: Vec<Vec<String>>,
}

/// Membership record emitted by resonance queries.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MembershipRecord {
    pub point: Vec<Vec<String>>,
    pub i: usize,
    pub m: usize,
    pub twisted_betti: usize,
    pub member: bool,
}

/// Matrix as rows of exact rational strings.
pub fn mat_to_rows(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| format_rat(m.at(r, c))).collect())
        .collect()
}

fn mat_from_rows(rows: &[Vec<String>], expect_rows: usize, expect_cols: usize) -> Result<Mat> {
    if rows.len() != expect_rows {
        return Err(Error::Parse(format!(
            "expected {expect_rows} matrix rows, got {}",
            rows.len()
        )));
    }
    let mut m = Mat::zeros(expect_rows, expect_cols);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != expect_cols {
            return Err(Error::Parse(format!(
                "expected {expect_cols} entries in matrix row {r}, got {}",
                row.len()
            )));
        }
        for (c, s) in row.iter().enumerate() {
            *m.at_mut(r, c) = parse_rat(s)?;
        }
    }
    Ok(m)
}

pub fn cdga_to_doc(a: &Cdga) -> CdgaDoc {
    CdgaDoc {
        q: a.q(),
        dims: a.dims().to_vec(),
        labels: Some(a.labels().to_vec()),
        mult: a
            .mult_entries()
            .map(|e| MultEntryDoc {
                i: e.i,
                j: e.j,
                a: e.a,
                b: e.b,
                out: e.out.iter().map(|(c, idx)| (format_rat(c), *idx)).collect(),
            })
            .collect(),
        diff: a.diffs().iter().map(mat_to_rows).collect(),
    }
}

pub fn cdga_from_doc(doc: &CdgaDoc) -> Result<Cdga> {
    if doc.dims.len() != doc.q + 2 {
        return Err(Error::Parse(format!(
            "dims must have q+2 = {} entries, got {}",
            doc.q + 2,
            doc.dims.len()
        )));
    }
    if doc.diff.len() != doc.q + 1 {
        return Err(Error::Parse(format!(
            "diff must have q+1 = {} matrices, got {}",
            doc.q + 1,
            doc.diff.len()
        )));
    }
    let mut entries = Vec::with_capacity(doc.mult.len());
    for e in &doc.mult {
        let mut out = Vec::with_capacity(e.out.len());
        for (s, idx) in &e.out {
            out.push((parse_rat(s)?, *idx));
        }
        entries.push(MultEntry {
            i: e.i,
            j: e.j,
            a: e.a,
            b: e.b,
            out,
        });
    }
    let mut diff = Vec::with_capacity(doc.diff.len());
    for (i, rows) in doc.diff.iter().enumerate() {
        diff.push(mat_from_rows(rows, doc.dims[i + 1], doc.dims[i])?);
    }
    Cdga::new(doc.q, doc.dims.clone(), doc.labels.clone(), entries, diff)
}

pub fn cdga_to_json(a: &Cdga) -> String {
    serde_json::to_string_pretty(&cdga_to_doc(a)).expect("serializable")
}

pub fn cdga_from_json(s: &str) -> Result<Cdga> {
    let doc: CdgaDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    cdga_from_doc(&doc)
}

pub fn lie_to_doc(g: &LieAlgebra) -> LieDoc {
    let mut bracket = Vec::new();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let out: Vec<(String, usize)> = g
                .bracket_basis(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| (format_rat(c), k))
                .collect();
            if !out.is_empty() {
                bracket.push(BracketEntryDoc { i, j, out });
            }
        }
    }
    LieDoc {
        dim: g.dim(),
        labels: Some(g.labels().to_vec()),
        name: Some(g.name().to_string()),
        bracket,
    }
}

pub fn lie_from_doc(doc: &LieDoc) -> Result<LieAlgebra> {
    let mut bracket = vec![vec![vec![Rat::from_integer(0.into()); doc.dim]; doc.dim]; doc.dim];
    for e in &doc.bracket {
        if e.i >= doc.dim || e.j >= doc.dim {
            return Err(Error::Parse(format!(
                "bracket entry ({}, {}) out of range",
                e.i, e.j
            )));
        }
        for (s, k) in &e.out {
            if *k >= doc.dim {
                return Err(Error::Parse(format!("bracket output index {k} out of range")));
            }
            bracket[e.i][e.j][*k] = parse_rat(s)?;
        }
    }
    let labels = doc
        .labels
        .clone()
        .unwrap_or_else(|| (0..doc.dim).map(|i| format!("x{}", i + 1)).collect());
    let name = doc.name.clone().unwrap_or_else(|| "custom".to_string());
    LieAlgebra::new(doc.dim, bracket, labels, name)
}

pub fn rep_to_doc(rep: &Representation) -> RepDoc {
    RepDoc {
        v_dim: rep.v_dim(),
        mats: rep.mats().iter().map(mat_to_rows).collect(),
    }
}

pub fn rep_from_doc(doc: &RepDoc, lie: Arc<LieAlgebra>) -> Result<Representation> {
    if doc.mats.len() != lie.dim() {
        return Err(Error::Parse(format!(
            "expected {} representation matrices, got {}",
            lie.dim(),
            doc.mats.len()
        )));
    }
    let mut mats = Vec::with_capacity(doc.mats.len());
    for rows in &doc.mats {
        mats.push(mat_from_rows(rows, doc.v_dim, doc.v_dim)?);
    }
    Representation::new(lie, mats)
}

pub fn lierep_to_json(rep: &Representation) -> String {
    let doc = LieRepDoc {
        lie: lie_to_doc(&rep.lie),
        rep: rep_to_doc(rep),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn lierep_from_json(s: &str) -> Result<Representation> {
    let doc: LieRepDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let lie = Arc::new(lie_from_doc(&doc.lie)?);
    rep_from_doc(&doc.rep, lie)
}

pub fn connection_to_json(omega: &Connection) -> String {
    let doc = ConnectionDoc {
        coeffs: mat_to_rows(omega.coeffs()),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn connection_from_json(
    s: &str,
    cdga: Arc<Cdga>,
    lie: Arc<LieAlgebra>,
) -> Result<Connection> {
    let doc: ConnectionDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let coeffs = mat_from_rows(&doc.coeffs, cdga.dim(1), lie.dim())?;
    Connection::new(cdga, lie, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lie;
    use crate::linalg::rint;

    #[test]
    fn cdga_round_trip_is_exact() {
        for a in [
            fixtures::exterior(&["e"], 1),
            fixtures::exterior(&["e1", "e2"], 2),
            fixtures::solvable_model(),
        ] {
            let json = cdga_to_json(&a);
            let back = cdga_from_json(&json).unwrap();
            assert_eq!(a, back);
            // serializing the parse is byte-identical
            assert_eq!(json, cdga_to_json(&back));
        }
    }

    #[test]
    fn lierep_round_trip_is_exact() {
        for entry in [lie::abelian(2), lie::sl2(), lie::sol2(), lie::gl2()] {
            let json = lierep_to_json(&entry.rep);
            let back = lierep_from_json(&json).unwrap();
            assert_eq!(entry.rep.lie.as_ref(), back.lie.as_ref());
            assert_eq!(entry.rep.mats(), back.mats());
            assert_eq!(json, lierep_to_json(&back));
        }
    }

    #[test]
    fn connection_round_trip() {
        let a = Arc::new(fixtures::solvable_model());
        let entry = lie::sol2();
        let omega = Connection::rank_one(
            a.clone(),
            entry.lie.clone(),
            &[rint(1), rint(0)],
            &[crate::linalg::rat(3, 2), rint(-1)],
        )
        .unwrap();
        let json = connection_to_json(&omega);
        let back = connection_from_json(&json, a, entry.lie.clone()).unwrap();
        assert_eq!(omega.coeffs(), back.coeffs());
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(cdga_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            cdga_from_json(r#"{"q":1,"dims":[1,1],"mult":[],"diff":[]}"#),
            Err(Error::Parse(_))
        ));
        // zero denominator is rejected, not a panic
        let bad = r#"{"coeffs": [["1/0"]]}"#;
        let a = Arc::new(fixtures::exterior(&["e"], 1));
        let entry = lie::abelian(1);
        assert!(matches!(
            connection_from_json(bad, a, entry.lie.clone()),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let a = Arc::new(fixtures::solvable_model());
        let entry = lie::sol2();
        let bad = r#"{"coeffs": [["1", "0"]]}"#; // 1 row, needs 2
        assert!(connection_from_json(bad, a, entry.lie.clone()).is_err());
    }
}
