use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the analysis, construction and semiring routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator {index} is the zero vector")]
    InvalidGenerator { index: usize },

    #[error("presentation is not pointed: nonnegative kernel vector {witness:?}")]
    NotPointed { witness: Vec<BigInt> },

    #[error("generator {index} is not an atom: factorization {witness:?}")]
    NotAnAtom { index: usize, witness: Vec<u64> },

    #[error("generator {index} duplicates generator {first}")]
    DuplicateGenerator { index: usize, first: usize },

    #[error("presentation is not normalized: {0}")]
    NotNormalized(String),

    #[error("invalid master spec: {0}")]
    InvalidMasterSpec(String),

    #[error("invalid pair ({a}, {b}): {reason}")]
    InvalidPair { a: i64, b: i64, reason: String },

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("degenerate witness: {0}")]
    DegenerateWitness(String),

    #[error("operands live in different semirings")]
    MixedDomains,

    #[error("truncation parameter K = {0} is below the minimum of 2")]
    InvalidTruncation(i64),

    #[error("search space too large: {0}")]
    SearchTooLarge(String),

    #[error("integer overflow while converting {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
