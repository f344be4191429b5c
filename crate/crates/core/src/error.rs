use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid support: {0}")]
    InvalidSupport(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NonConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {gap:e}")]
    Asymmetric { i: usize, j: usize, gap: f64 },

    #[error("congruence factor must be a permutation or a nonsingular diagonal matrix")]
    BadCongruence,

    #[error("Gram matrix does not represent the polynomial: {0}")]
    GramMismatch(String),

    #[error("parameter below threshold: {0}")]
    BelowThreshold(String),

    #[error("embedded fixture failed validation: {0}")]
    FixtureCorrupt(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
