use thiserror::Error;

/// Errors raised by the game engine, the samplers, the oracles and the harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input value is outside its admissible set (negative threshold, empty list, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A numeric argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A strategy or caller broke the game protocol.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// An iterative procedure failed to converge or hit its iteration cap.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The request exceeds a state-space or size guard.
    #[error("resource limit: {0}")]
    Resource(String),

    /// An internal consistency check failed.
    #[error("internal assertion failed: {0}")]
    Assertion(String),

    /// Malformed specification string.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Invalid or inconsistent experiment configuration.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::ContractViolation(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True for errors that stem from the user's configuration rather than the run itself.
    pub fn is_config_error(&self) -> bool {
        matches!(self, Error::Config(_) | Error::Parse { .. } | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
