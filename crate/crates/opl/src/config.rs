use crate::error::OplError;
use estimators::EstimatorSpec;

/// Hyperparameters for mini-batch gradient ascent on an estimator objective.
///
/// `propensity_noise_b` and `reward_flip_pf`, when set, corrupt the training
/// dataset before optimization (multiplicative inverse-Gamma propensity noise
/// and independent Bernoulli reward flips respectively); see the injectors in
/// this crate. All randomness — corruption and batch shuffling — derives from
/// `seed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OplConfig {
    pub objective: EstimatorSpec,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub max_epochs: usize,
    pub early_stop_patience: usize,
    pub propensity_noise_b: Option<f64>,
    pub reward_flip_pf: Option<f64>,
    pub seed: u64,
}

impl OplConfig {
    pub const DEFAULT_LEARNING_RATE: f64 = 1e-3;
    pub const DEFAULT_BATCH_SIZE: usize = 64;
    pub const DEFAULT_MAX_EPOCHS: usize = 300;
    pub const DEFAULT_PATIENCE: usize = 10;

    /// Defaults for everything but the objective: learning rate 1e-3, batch
    /// size 64, 300 epochs, patience 10, no corruption, seed 0.
    pub fn with_objective(objective: EstimatorSpec) -> Self {
        Self {
            objective,
            learning_rate: Self::DEFAULT_LEARNING_RATE,
            batch_size: Self::DEFAULT_BATCH_SIZE,
            max_epochs: Self::DEFAULT_MAX_EPOCHS,
            early_stop_patience: Self::DEFAULT_PATIENCE,
            propensity_noise_b: None,
            reward_flip_pf: None,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), OplError> {
        if !(self.learning_rate >= 0.0) || !self.learning_rate.is_finite() {
            return Err(OplError::InvalidParameter(format!(
                "learning rate must be finite and non-negative, got {}",
                self.learning_rate
            )));
        }
        if self.batch_size == 0 {
            return Err(OplError::InvalidParameter("batch size must be positive".into()));
        }
        if self.max_epochs == 0 {
            return Err(OplError::InvalidParameter("max epochs must be positive".into()));
        }
        if let Some(b) = self.propensity_noise_b {
            if !(b > 0.0) || !b.is_finite() {
                return Err(OplError::InvalidParameter(format!(
                    "propensity noise shape must be positive and finite, got {b}"
                )));
            }
        }
        if let Some(pf) = self.reward_flip_pf {
            if !(0.0..=1.0).contains(&pf) {
                return Err(OplError::InvalidParameter(format!(
                    "reward flip probability must lie in [0, 1], got {pf}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = OplConfig::with_objective(EstimatorSpec::lse(0.1));
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.learning_rate, 1e-3);
        assert_eq!(cfg.batch_size, 64);
        assert_eq!(cfg.max_epochs, 300);
        assert_eq!(cfg.early_stop_patience, 10);
    }

    #[test]
    fn ranges_are_enforced() {
        let base = OplConfig::with_objective(EstimatorSpec::ips());
        assert!(OplConfig { learning_rate: -1.0, ..base }.validate().is_err());
        assert!(OplConfig { learning_rate: f64::NAN, ..base }.validate().is_err());
        assert!(OplConfig { batch_size: 0, ..base }.validate().is_err());
        assert!(OplConfig { max_epochs: 0, ..base }.validate().is_err());
        assert!(OplConfig { propensity_noise_b: Some(0.0), ..base }.validate().is_err());
        assert!(OplConfig { reward_flip_pf: Some(1.5), ..base }.validate().is_err());
        assert!(OplConfig { reward_flip_pf: Some(1.0), ..base }.validate().is_ok());
        // Zero learning rate and zero patience are legal.
        assert!(OplConfig { learning_rate: 0.0, early_stop_patience: 0, ..base }
            .validate()
            .is_ok());
    }
}
