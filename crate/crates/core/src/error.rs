use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation parameter is outside its domain.
    #[error("invalid parameter: {0}")]
    Domain(String),

    /// A configured resource cap was exceeded.
    #[error("resource limit exceeded for {what}: {got} > {limit}")]
    Resource { what: String, limit: u64, got: u64 },

    /// Expression syntax error, with a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Integer overflow in coefficient or counting arithmetic.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    /// Malformed input file.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An iterative solver stopped before reaching its target accuracy.
    #[error("solver did not converge: {0}")]
    NoConvergence(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(what: impl Into<String>, limit: u64, got: u64) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
            got,
        }
    }

    /// True for errors that map to the CLI's resource exit code.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
