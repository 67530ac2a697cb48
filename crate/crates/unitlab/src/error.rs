use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on user-supplied data failed.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A configured size cap would be exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Multiplicative inverse of zero requested.
    #[error("division by zero in finite field")]
    DivisionByZero,
    /// A structural self-check failed; indicates a bug, not bad input.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
