//! Error type shared by every module.
//!
//! Each variant belongs to exactly one [`ErrorCategory`], which is what the
//! command-line front end turns into a process exit code.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the object is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation's precondition on its input was violated.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Invalid configuration or malformed input data.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A request would exceed a memory or size budget.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A truncation or tolerance cannot be honoured at the requested accuracy.
    #[error("precision error: {0}")]
    Precision(String),

    /// Discrete grid too coarse for the requested representation.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// A value overflowed the floating point range.
    #[error("range error: {0}")]
    Range(String),

    /// Least-squares fit could not be formed.
    #[error("fit error: {0}")]
    Fit(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Coarse classification used for exit codes and the C ABI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Bad input or violated precondition (exit code 2).
    Usage,
    /// Resource, precision or numerical-range failure (exit code 3).
    Numerical,
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Domain(_)
            | Error::Contract(_)
            | Error::Parameter(_)
            | Error::Fit(_)
            | Error::Json(_) => ErrorCategory::Usage,
            Error::Resource(_)
            | Error::Precision(_)
            | Error::Resolution(_)
            | Error::Range(_)
            | Error::Io(_)
            | Error::Csv(_) => ErrorCategory::Numerical,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
