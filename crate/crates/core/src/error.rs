use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input coefficients are too far from unit norm to be silently rescaled.
    #[error("coefficients have squared norm {norm_sq}, deviation exceeds {tolerance}")]
    Normalization { norm_sq: f64, tolerance: f64 },

    #[error("expected a {expected}x{expected} matrix, got {found}x{found}")]
    Dimension { expected: usize, found: usize },

    #[error("Hermitian eigensolver did not converge in {sweeps} sweeps (dim {dim}, off-diagonal norm {residual:e})")]
    Convergence {
        dim: usize,
        sweeps: usize,
        residual: f64,
    },

    #[error("value outside its domain: {0}")]
    Domain(String),

    #[error("non-finite amplitude encountered")]
    NonFinite,

    #[error("configuration error: {0}")]
    Config(String),
}
