use crate::error::OplError;
use lbf_core::LbfDataset;
use nalgebra::{DMatrix, DVector};

/// Per-action linear reward model r̂(x, a) = βₐ·x + cₐ, fitted by ridge
/// regression on each action's logged records (the intercept is never
/// penalized). Actions with no logged records predict zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardModel {
    /// One row per action: feature coefficients followed by the intercept.
    coefficients: Vec<Vec<f64>>,
    ridge: f64,
}

impl RewardModel {
    /// Builds a model from explicit rows of `feature_dim + 1` coefficients
    /// (intercept last).
    pub fn from_coefficients(coefficients: Vec<Vec<f64>>, ridge: f64) -> Result<Self, OplError> {
        if coefficients.is_empty() || coefficients[0].len() < 2 {
            return Err(OplError::InvalidParameter(
                "need at least one action row of [coefficients…, intercept]".into(),
            ));
        }
        let width = coefficients[0].len();
        if coefficients.iter().any(|row| row.len() != width) {
            return Err(OplError::InvalidParameter("ragged coefficient rows".into()));
        }
        if coefficients.iter().flatten().any(|v| !v.is_finite()) {
            return Err(OplError::InvalidParameter("non-finite coefficient".into()));
        }
        Ok(Self { coefficients, ridge })
    }

    /// A model predicting the given constant for every action and context.
    pub fn constant(value: f64, action_count: usize, feature_dim: usize) -> Self {
        let mut row = vec![0.0; feature_dim + 1];
        row[feature_dim] = value;
        Self { coefficients: vec![row; action_count], ridge: 0.0 }
    }

    pub fn coefficients(&self) -> &[Vec<f64>] {
        &self.coefficients
    }

    pub fn ridge(&self) -> f64 {
        self.ridge
    }

    pub fn action_count(&self) -> usize {
        self.coefficients.len()
    }

    pub fn feature_dim(&self) -> usize {
        self.coefficients[0].len() - 1
    }

    pub fn predict(&self, context: &[f64], action: usize) -> f64 {
        let row = &self.coefficients[action];
        let (coefs, intercept) = row.split_at(row.len() - 1);
        coefs.iter().zip(context).map(|(c, x)| c * x).sum::<f64>() + intercept[0]
    }
}

/// Fits one ridge regression per action over that action's logged records,
/// minimizing Σ(βₐ·x + cₐ − r)² + ridge·‖βₐ‖² (intercept unpenalized).
/// Actions never observed get the zero function. With `ridge` = 0 a singular
/// design is an error suggesting a positive ridge.
pub fn fit_reward_model(dataset: &LbfDataset, ridge: f64) -> Result<RewardModel, OplError> {
    if !(ridge >= 0.0) || !ridge.is_finite() {
        return Err(OplError::InvalidParameter(format!(
            "ridge penalty must be finite and non-negative, got {ridge}"
        )));
    }
    let d = dataset.feature_dim();
    let width = d + 1;
    let mut coefficients = Vec::with_capacity(dataset.action_count());
    for action in 0..dataset.action_count() {
        let rows: Vec<_> =
            dataset.records().iter().filter(|r| r.action == action).collect();
        if rows.is_empty() {
            coefficients.push(vec![0.0; width]);
            continue;
        }
        // Normal equations on the intercept-augmented design.
        let design = DMatrix::<f64>::from_fn(rows.len(), width, |i, j| {
            if j < d {
                rows[i].context[j]
            } else {
                1.0
            }
        });
        let targets = DVector::<f64>::from_fn(rows.len(), |i, _| rows[i].reward);
        let mut normal = design.transpose() * &design;
        for j in 0..d {
            normal[(j, j)] += ridge;
        }
        let rhs = design.transpose() * targets;
        let solution = normal.cholesky().map(|ch| ch.solve(&rhs)).ok_or_else(|| {
            OplError::InvalidData(format!(
                "singular regression design for action {action}; use a ridge penalty > 0"
            ))
        })?;
        coefficients.push(solution.iter().copied().collect());
    }
    RewardModel::from_coefficients(coefficients, ridge)
}
