use thiserror::Error;

/// Errors raised by the counting, generation and oracle routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A result or intermediate value does not fit in 64 bits.
    #[error("range error: {0}")]
    Range(String),
    /// A request exceeds a configured size or memory cap.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Unknown strategy, class spec or similar user input.
    #[error("usage error: {0}")]
    Usage(String),
    /// A sieve dump could not be read or written.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
pub(crate) use domain;
