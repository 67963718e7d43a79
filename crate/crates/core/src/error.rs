use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("polynomial is not monic or has degree < 1")]
    NotMonic,

    #[error("polynomial is reducible over Q: {0}")]
    Reducible(String),

    #[error("interval [{lo}, {hi}] does not isolate exactly one root (found {count})")]
    BadInterval { lo: String, hi: String, count: usize },

    #[error("elements belong to different number fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is rational; an irrational parameter is required")]
    Rational(String),

    #[error("radicand {0} is the square of a rational")]
    PerfectSquare(String),

    #[error("non-canonical input: {0}")]
    NonCanonical(String),

    #[error("{0}")]
    Domain(String),
}
