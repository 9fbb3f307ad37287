use thiserror::Error;

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}: the algebra requires n >= 2")]
    InvalidDimension(usize),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),

    #[error("matrix is not negacyclic (deviation {deviation:.3e})")]
    NotNegacyclic { deviation: f64 },

    #[error("spectrum is not conjugate symmetric (imaginary residue {residue:.3e})")]
    NotConjugateSymmetric { residue: f64 },

    #[error("element is a zero divisor (spectral ratio {ratio:.3e})")]
    ZeroDivisor { ratio: f64 },

    #[error("element is not a zero divisor (spectral ratio {ratio:.3e})")]
    NotAZeroDivisor { ratio: f64 },

    #[error("all {samples} samples fell within the zero-divisor threshold")]
    AllSamplesClipped { samples: u64 },

    #[error("operation requires an even dimension, got n = {0}")]
    OddDimension(usize),

    #[error("operation requires an odd dimension, got n = {0}")]
    EvenDimension(usize),

    #[error("field evaluation failed: {0}")]
    EvaluationFailure(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
