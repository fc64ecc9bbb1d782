use crate::error::CoreError;
use crate::policy::Policy;

/// One logged interaction: context features, chosen action, the logging
/// policy's probability for that action, and the observed reward.
#[derive(Debug, Clone, PartialEq)]
pub struct LbfRecord {
    pub context: Vec<f64>,
    pub action: usize,
    pub propensity: f64,
    pub reward: f64,
}

impl LbfRecord {
    /// Validates field invariants: propensity in (0,1], reward ≥ 0, finite
    /// context.
    pub fn new(
        context: Vec<f64>,
        action: usize,
        propensity: f64,
        reward: f64,
    ) -> Result<Self, CoreError> {
        if !(propensity > 0.0 && propensity <= 1.0) {
            return Err(CoreError::InvalidRecord(format!(
                "propensity must lie in (0, 1], got {propensity}"
            )));
        }
        if !(reward >= 0.0) || !reward.is_finite() {
            return Err(CoreError::InvalidRecord(format!(
                "reward must be finite and non-negative, got {reward}"
            )));
        }
        if context.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::InvalidRecord("non-finite context feature".into()));
        }
        Ok(Self { context, action, propensity, reward })
    }
}

/// A non-empty collection of records with consistent shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct LbfDataset {
    records: Vec<LbfRecord>,
    action_count: usize,
    feature_dim: usize,
}

impl LbfDataset {
    pub fn new(records: Vec<LbfRecord>, action_count: usize) -> Result<Self, CoreError> {
        if records.is_empty() {
            return Err(CoreError::InvalidDataset("empty dataset".into()));
        }
        if action_count == 0 {
            return Err(CoreError::InvalidDataset("action_count must be positive".into()));
        }
        let feature_dim = records[0].context.len();
        if feature_dim == 0 {
            return Err(CoreError::InvalidDataset("feature_dim must be positive".into()));
        }
        for (i, r) in records.iter().enumerate() {
            if r.context.len() != feature_dim {
                return Err(CoreError::InvalidDataset(format!(
                    "record {i} has {} features, expected {feature_dim}",
                    r.context.len()
                )));
            }
            if r.action >= action_count {
                return Err(CoreError::InvalidDataset(format!(
                    "record {i} action {} out of range (action_count {action_count})",
                    r.action
                )));
            }
        }
        Ok(Self { records, action_count, feature_dim })
    }

    pub fn records(&self) -> &[LbfRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty datasets
    }

    pub fn action_count(&self) -> usize {
        self.action_count
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    /// Rebuilds the dataset with one field transformed; used by noise
    /// injectors. The closure receives each record by value and must keep
    /// shapes intact.
    pub fn map_records(
        &self,
        f: impl FnMut(LbfRecord) -> Result<LbfRecord, CoreError>,
    ) -> Result<Self, CoreError> {
        let records: Result<Vec<_>, _> = self.records.iter().cloned().map(f).collect();
        Self::new(records?, self.action_count)
    }
}

/// An importance-weighted observation: the ratio w = π_target/π_logging, the
/// reward, and their product (the quantity every value estimator aggregates).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSample {
    pub weight: f64,
    pub reward: f64,
    pub weighted_reward: f64,
}

impl WeightedSample {
    pub fn new(weight: f64, reward: f64) -> Self {
        Self { weight, reward, weighted_reward: weight * reward }
    }
}

/// An observation carrying the raw target and logging probabilities (or
/// densities, for continuous synthetic scenarios) rather than only their
/// ratio. Estimators that transform the logging probability itself — not just
/// the ratio — need this form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawSample {
    /// Target-policy probability/density of the logged action.
    pub target_prob: f64,
    /// Logging-policy probability/density of the logged action (already
    /// floored when a floor applies).
    pub logging_prob: f64,
    pub reward: f64,
}

impl RawSample {
    pub fn weighted(&self) -> WeightedSample {
        WeightedSample::new(self.target_prob / self.logging_prob, self.reward)
    }
}

/// Importance weights for a dataset under a target policy.
///
/// Each record contributes `weight = target.prob(x, a) / max(p, floor)`.
/// Record order is preserved. A floor of zero disables clamping.
pub fn compute_weighted_samples(
    dataset: &LbfDataset,
    target: &dyn Policy,
    propensity_floor: f64,
) -> Result<Vec<WeightedSample>, CoreError> {
    Ok(compute_raw_samples(dataset, target, propensity_floor)?
        .iter()
        .map(RawSample::weighted)
        .collect())
}

/// Raw-probability counterpart of [`compute_weighted_samples`]; same flooring
/// and ordering, but keeps the two probabilities separate.
pub fn compute_raw_samples(
    dataset: &LbfDataset,
    target: &dyn Policy,
    propensity_floor: f64,
) -> Result<Vec<RawSample>, CoreError> {
    if !(0.0..1.0).contains(&propensity_floor) {
        return Err(CoreError::InvalidArgument(format!(
            "propensity floor must lie in [0, 1), got {propensity_floor}"
        )));
    }
    dataset
        .records()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let floored = r.propensity.max(propensity_floor);
            if floored <= 0.0 {
                return Err(CoreError::InvalidRecord(format!(
                    "record {i}: propensity {} not positive after flooring",
                    r.propensity
                )));
            }
            Ok(RawSample {
                target_prob: target.prob(&r.context, r.action),
                logging_prob: floored,
                reward: r.reward,
            })
        })
        .collect()
}
