//! Crate-wide error type.

/// Errors produced anywhere in the crate.
#[derive(thiserror::Error, Debug)]
pub enum Error {
    /// An argument violated a documented precondition (non-finite value,
    /// out-of-range pixel, non-positive depth, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Two grids that must share dimensions do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A scenario or controller configuration failed validation.
    #[error("config error: {0}")]
    Config(String),
    /// The sampling optimizer could not produce a finite-loss candidate.
    #[error("optimization failed: {0}")]
    Optimization(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
