use thiserror::Error;

/// Errors raised by core data-model operations.
#[derive(Debug, Error)]
pub enum CoreError {
    /// A record violates a field invariant.
    #[error("invalid record: {0}")]
    InvalidRecord(String),

    /// A dataset-level invariant is violated (empty, inconsistent shapes…).
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    /// An operation argument is out of its legal range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A CSV row could not be parsed; carries the 1-based line number.
    #[error("malformed CSV at line {line}: {message}")]
    MalformedCsv { line: u64, message: String },

    /// Underlying file I/O failure.
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
