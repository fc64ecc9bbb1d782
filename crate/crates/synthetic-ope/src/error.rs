use estimators::EstimatorError;
use thiserror::Error;

/// Errors raised while configuring or running synthetic evaluation studies.
#[derive(Debug, Error)]
pub enum OpeError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("estimator failed: {0}")]
    Estimator(#[from] EstimatorError),
}
