use thiserror::Error;

/// Errors raised by hyperparameter selection.
#[derive(Debug, Error)]
pub enum SelectError {
    #[error("empty input: selection needs at least one sample")]
    EmptyInput,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}
