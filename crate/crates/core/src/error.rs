use thiserror::Error;

/// Errors raised by the library. All of them describe bad input except
/// [`Error::InvariantViolation`], which signals a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Lie type: {0}")]
    InvalidLieType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("point lies outside the closed alcove: {0}")]
    OutsideAlcove(String),
    #[error("type is not admissible: {0}")]
    NotAdmissible(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
