use thiserror::Error;

use crate::exact_linalg::Rat;

/// A violated Jacobi identity: the `l`-th component of the cyclic sum over
/// `(i, j, k)` is `value` (indices 0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: Rat,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("Jacobi identity fails for {} triple(s), first at (X{}, X{}, X{}) component X{}", .0.len(), .0[0].i + 1, .0[0].j + 1, .0[0].k + 1, .0[0].l + 1)]
    JacobiViolation(Vec<JacobiWitness>),
    #[error("algebra is not nilpotent: lower central series stabilizes at dimension {0}")]
    NotNilpotent(usize),
    #[error("grading violation: [X{}, X{}] has a component on X{} outside the expected layer", .i + 1, .j + 1, .k + 1)]
    GradingViolation { i: usize, j: usize, k: usize },
    #[error("grading weights must be positive and one per basis vector: {0}")]
    InvalidGrading(String),
    #[error("the G-star needs a diagonal Gram matrix")]
    NonDiagonalGram,
    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),
    #[error("internal disagreement: {0}")]
    InternalDisagreement(String),
    #[error("basis is not adapted to the asymptotic weight spaces")]
    NotPureBasis,
    #[error("operator D not nilpotent within {cap} powers in degree {degree}")]
    NilpotencyCapExceeded { degree: usize, cap: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: String, dim: usize },
    #[error("duplicate bracket [X{}, X{}]", .0 + 1, .1 + 1)]
    DuplicateBracket(usize, usize),
    #[error("bad rational {0:?}")]
    BadRational(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown grading {0:?}")]
    UnknownGrading(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
