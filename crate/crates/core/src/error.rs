use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular (det = {det})")]
    Singular { det: Rational },

    #[error("rank-one update is not invertible: 1 + v^T A^-1 u = 0")]
    NotInvertible,

    #[error("invalid index set: {0}")]
    IndexSet(String),

    #[error("zero matrix has no full-rank factorization")]
    ZeroMatrix,

    #[error("dimension {n} is below the minimum {min} for this predicate")]
    DimensionTooSmall { n: usize, min: usize },

    #[error("dimension {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("rejected: {0}")]
    Reject(String),

    #[error("generator budget exhausted after {attempts} attempts ({accepted}/{requested} accepted)")]
    BudgetExhausted {
        attempts: usize,
        accepted: usize,
        requested: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal check failed: {0}")]
    Postcondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
