use crate::error::OpeError;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Additive reward corruption applied sample by sample.
///
/// `PositiveGaussian` adds |N(0, σ²)|; `Pareto` adds a scale-1 Pareto draw
/// with the given shape (support [1, ∞), heavy right tail). Both keep
/// rewards non-negative. Evaluation statistics are still computed against
/// the clean ground truth, so these injectors measure estimator robustness
/// to corruption, not a shifted target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RewardNoiseSpec {
    None,
    PositiveGaussian { sigma: f64 },
    Pareto { shape: f64 },
}

impl RewardNoiseSpec {
    pub fn positive_gaussian(sigma: f64) -> Result<Self, OpeError> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(OpeError::InvalidParameter(format!(
                "noise scale must be positive and finite, got {sigma}"
            )));
        }
        Ok(Self::PositiveGaussian { sigma })
    }

    pub fn pareto(shape: f64) -> Result<Self, OpeError> {
        if !(shape > 0.0 && shape.is_finite()) {
            return Err(OpeError::InvalidParameter(format!(
                "noise shape must be positive and finite, got {shape}"
            )));
        }
        Ok(Self::Pareto { shape })
    }

    /// Corrupts one reward, consuming either zero or one draw from the
    /// stream (`None` consumes nothing).
    pub fn apply<R: Rng>(&self, reward: f64, rng: &mut R) -> f64 {
        match *self {
            RewardNoiseSpec::None => reward,
            RewardNoiseSpec::PositiveGaussian { sigma } => {
                let z: f64 = StandardNormal.sample(rng);
                reward + sigma * z.abs()
            }
            RewardNoiseSpec::Pareto { shape } => {
                let q: f64 = rng.gen_range(0.0..1.0);
                reward + (1.0 - q).powf(-1.0 / shape)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            RewardNoiseSpec::None => "none".into(),
            RewardNoiseSpec::PositiveGaussian { sigma } => format!("positive-gaussian({sigma})"),
            RewardNoiseSpec::Pareto { shape } => format!("pareto({shape})"),
        }
    }
}
