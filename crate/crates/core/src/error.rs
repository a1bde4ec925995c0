use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no sign change of J'_{nu} on [{lo}, {hi}] (J' = {f_lo:e}, {f_hi:e})")]
    Bracket {
        nu: f64,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("bound '{source_tag}' is not valid here: {reason}")]
    InvalidBound { source_tag: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
