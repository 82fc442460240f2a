use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("series error: {0}")]
    Series(String),
    #[error("decomposition residual is nonzero: {0}")]
    Residual(String),
    #[error("J does not deform I: {0}")]
    NotADeformation(String),
    #[error("linear algebra: {0}")]
    Linalg(String),
    #[error("solver: {0}")]
    Solver(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
