use thiserror::Error;

/// Errors raised by the public operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The arguments violate a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An internal consistency check failed. This is always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
