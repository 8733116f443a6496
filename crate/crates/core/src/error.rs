use thiserror::Error;

/// Errors produced by the numerical routines and the file readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid axis: {0}")]
    InvalidAxis(String),

    #[error("non-finite value {value} at ({p}, {q})")]
    NonFinite { p: f64, q: f64, value: String },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("kernel singularity: |sin(alpha)| = {sin_abs:.6} < 0.1 for alpha = {alpha}")]
    Singular { alpha: f64, sin_abs: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a density operator: {0}")]
    NotDensity(String),

    #[error("operator not representable in basis: projection residual {residual:.3e} exceeds {tolerance:.1e}")]
    PoorProjection { residual: f64, tolerance: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
