use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Core(#[from] anyon_core::Error),
}

pub type Result<T> = std::result::Result<T, McError>;

pub(crate) fn invalid(msg: impl Into<String>) -> McError {
    McError::InvalidArgument(msg.into())
}
