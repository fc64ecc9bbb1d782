use crate::error::OplError;
use lbf_core::{LinearSoftmaxPolicy, Policy};

/// A supervised classification set: feature rows plus integer labels. Used
/// for validation-accuracy early stopping, held-out evaluation, and as the
/// source material that `lbf_core::supervised_to_bandit` turns into logs.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSet {
    features: Vec<Vec<f64>>,
    labels: Vec<usize>,
}

impl LabeledSet {
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<usize>) -> Result<Self, OplError> {
        if features.is_empty() {
            return Err(OplError::InvalidData("empty labeled set".into()));
        }
        if features.len() != labels.len() {
            return Err(OplError::InvalidData(format!(
                "{} feature rows vs {} labels",
                features.len(),
                labels.len()
            )));
        }
        let dim = features[0].len();
        if dim == 0 {
            return Err(OplError::InvalidData("zero-dimensional features".into()));
        }
        for (i, row) in features.iter().enumerate() {
            if row.len() != dim {
                return Err(OplError::InvalidData(format!(
                    "row {i} has {} features, expected {dim}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(OplError::InvalidData(format!("row {i} has a non-finite feature")));
            }
        }
        Ok(Self { features, labels })
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty sets
    }

    pub fn feature_dim(&self) -> usize {
        self.features[0].len()
    }

    /// The first `n` rows as their own set (n capped at the length).
    pub fn head(&self, n: usize) -> Self {
        let n = n.min(self.len()).max(1);
        Self {
            features: self.features[..n].to_vec(),
            labels: self.labels[..n].to_vec(),
        }
    }
}

/// Fraction of samples whose most-probable action equals the label. The
/// argmax is temperature-independent; exact ties break toward the lowest
/// action index.
pub fn deterministic_accuracy(
    policy: &LinearSoftmaxPolicy,
    features: &[Vec<f64>],
    labels: &[usize],
) -> Result<f64, OplError> {
    if features.is_empty() || features.len() != labels.len() {
        return Err(OplError::InvalidData(format!(
            "{} feature rows vs {} labels",
            features.len(),
            labels.len()
        )));
    }
    let k = policy.action_count();
    if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
        return Err(OplError::InvalidData(format!("label {bad} out of range for {k} actions")));
    }
    let hits = features
        .iter()
        .zip(labels)
        .filter(|(x, &y)| policy.argmax_action(x) == y)
        .count();
    Ok(hits as f64 / labels.len() as f64)
}
