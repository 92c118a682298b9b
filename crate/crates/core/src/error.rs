use thiserror::Error;

/// Errors produced by kernel operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: operands belong to different rings")]
    RingMismatch,

    #[error("exponent vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("leading term of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("monomial division is not exact")]
    InexactDivision,

    #[error("{0}")]
    Domain(String),

    #[error("generator is not homogeneous: {0}")]
    NonHomogeneous(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("no complete intersection witness of height {height} found after {attempts} attempts")]
    WitnessSearchFailed { height: usize, attempts: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("computation exceeded its time budget")]
    Timeout,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
