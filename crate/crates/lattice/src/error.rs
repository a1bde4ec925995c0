use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state space of {dim} configurations exceeds the cap of {cap}")]
    ResourceLimit { dim: u64, cap: u64 },

    #[error(
        "eigensolver did not converge in {matvecs} products (best residual {best_residual:e})"
    )]
    Convergence { matvecs: usize, best_residual: f64 },

    #[error(transparent)]
    Core(#[from] anyon_core::Error),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

pub(crate) fn invalid(msg: impl Into<String>) -> LatticeError {
    LatticeError::InvalidArgument(msg.into())
}
