//! Crate-wide error type.

/// Errors surfaced by the library, grouped by the contract they violate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid construction data: shapes, indices, parameter ranges.
    #[error("configuration error: {0}")]
    Config(String),
    /// Point outside the domain of a geometric primitive.
    #[error("domain error: {0}")]
    Domain(String),
    /// Floating-point breakdown (overflow, empty block after flooring, NaN).
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Operation called before its preconditions were established.
    #[error("precondition error: {0}")]
    Precondition(String),
    /// A state the solver contracts rule out; reaching it is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
