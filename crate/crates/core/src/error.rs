use thiserror::Error;

/// Errors raised by the library. Each variant maps to one failure class the
/// CLI reports distinctly.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation (vertex out of
    /// range, mismatched universes, empty composition).
    #[error("domain error: {0}")]
    Domain(String),

    /// A mathematical hypothesis of the operation is not satisfied by the
    /// input (not reflexive, not point-symmetric, complete relation, ...).
    #[error("hypothesis not satisfied: {0}")]
    Contract(String),

    /// Input is larger than the configured limit for an exhaustive method.
    #[error("size limit exceeded: {what} has n = {n}, limit is {limit}{hint}")]
    Size {
        what: &'static str,
        n: usize,
        limit: usize,
        hint: &'static str,
    },

    /// Malformed text input.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A group table or descriptor failed validation.
    #[error("invalid group: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
