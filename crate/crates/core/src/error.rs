//! Shared error type for the whole crate.

use thiserror::Error;

/// Errors raised by construction and computation routines.
///
/// Axiom violations detected by the validators are *not* errors; they are
/// reported as data (see [`crate::cdga::ValidationReport`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("column span of the subspace is not contained in the ambient kernel")]
    NotContained,

    #[error("degree {degree} out of range (max {max})")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("broken cochain complex: delta composition at position {at} is nonzero")]
    BrokenComplex { at: usize },

    #[error("unknown builtin Lie algebra `{0}`")]
    UnknownName(String),

    #[error("connection is not flat")]
    NotFlat,

    #[error("candidate map does not kill the presentation relations")]
    NotAHomomorphism,

    #[error("Lie-algebra cohomology is only available in degrees 0 and 1 (got {0})")]
    UnsupportedDegree(usize),

    #[error("operation requires a zero differential")]
    ZeroDifferentialRequired,

    #[error("requested truncation {requested} exceeds available truncation {available}")]
    TruncationMismatch { requested: usize, available: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("flat connection fits no trichotomy family")]
    ClassificationFailure,

    #[error("hypotheses not met: {0}")]
    HypothesisUnmet(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
