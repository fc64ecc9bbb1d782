use estimators::EstimatorError;
use lbf_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OplError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error(transparent)]
    Estimator(#[from] EstimatorError),

    /// Training produced a non-finite objective. Carries the last epoch that
    /// completed with a finite objective and that objective's value.
    #[error("training diverged at epoch {epoch}; last finite objective {last_objective} (epoch {last_finite_epoch})")]
    Diverged { epoch: usize, last_finite_epoch: usize, last_objective: f64 },
}
