use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The caller violated an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("dimension mismatch: expected {expected}, got {found} ({context})")]
    Dimension {
        expected: usize,
        found: usize,
        context: &'static str,
    },

    /// A construction produced an object that fails its own consistency
    /// check. Seeing this means a bug in this crate, not in the input.
    #[error("internal consistency error: {0}")]
    Internal(String),

    /// A built algebra failed identity validation.
    #[error("validation failed: {0}")]
    Validation(String),

    /// Peirce components did not span the algebra.
    #[error("structure error: {0}")]
    Structure(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
