use thiserror::Error;

/// Errors raised by estimator evaluation.
#[derive(Debug, Error)]
pub enum EstimatorError {
    #[error("empty input: estimators need at least one sample")]
    EmptyInput,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("non-finite input: {0}")]
    NonFinite(String),
}
