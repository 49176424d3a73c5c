use thiserror::Error;

/// Errors produced by the exact and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("radicand mismatch: sqrt({left}) and sqrt({right}) live in different fields")]
    RadicandMismatch { left: String, right: String },

    #[error("invalid dimension {got}: expected at least {min}")]
    InvalidDimension { got: usize, min: usize },

    #[error("minor index k={k} exceeds dimension p={p}")]
    MinorOutOfRange { k: usize, p: usize },

    #[error("dimension mismatch: matrix is {matrix}x{matrix}, vector has length {vector}")]
    DimensionMismatch { matrix: usize, vector: usize },

    #[error("elimination route undefined at C = 0 for k = {k}")]
    EliminationUndefined { k: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero vector has no defined norm ratio")]
    ZeroVector,

    #[error("non-finite coordinate at index {index}")]
    NonFinite { index: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("identity violated: {0}")]
    IdentityViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
