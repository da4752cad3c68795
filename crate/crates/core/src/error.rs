//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("quiver contains an oriented cycle")]
    CyclicQuiver,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("enumeration budget exceeded (limit {limit})")]
    BudgetExceeded { limit: u64 },
    #[error("wrong quiver shape: {0}")]
    WrongQuiverShape(String),
    #[error("theta(alpha) must be zero, got {0}")]
    ThetaAlphaNonzero(i64),
    #[error("representation is not semistable")]
    NotSemistable,
    #[error("framed point is not in the degree-zero locus")]
    NotInDegreeZeroLocus,
    #[error("unknown preset: {0}")]
    UnknownPreset(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
