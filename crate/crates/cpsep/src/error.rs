use thiserror::Error;

/// Errors surfaced by the library.
///
/// `ContractViolation` indicates that a precondition the algorithms are
/// entitled to rely on did not hold; it maps to exit code 3 in the CLI,
/// everything else to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Requested a separator between sets that cannot be separated
    /// (adjacent or intersecting terminal sets).
    #[error("no separator exists between the given sets")]
    NoSeparator,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal contract violation: {0}")]
    ContractViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
