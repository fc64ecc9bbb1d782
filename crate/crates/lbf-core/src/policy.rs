use crate::error::CoreError;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

/// A discrete conditional distribution over actions given a context, with
/// log-probability and parameter-gradient access for gradient-based training.
pub trait Policy: Send + Sync {
    fn action_count(&self) -> usize;

    /// π(action | context), in [0, 1]; probabilities over all actions sum
    /// to 1.
    fn prob(&self, context: &[f64], action: usize) -> f64;

    fn log_prob(&self, context: &[f64], action: usize) -> f64 {
        self.prob(context, action).ln()
    }

    /// Gradient of `log_prob` with respect to the policy's parameters,
    /// flattened to a single vector in the implementation's documented order.
    fn grad_log_prob(&self, context: &[f64], action: usize) -> Vec<f64>;

    /// Draws an action from π(· | context) by inverse CDF over action index.
    fn sample(&self, context: &[f64], rng: &mut ChaCha12Rng) -> usize {
        let u: f64 = rng.gen();
        let k = self.action_count();
        let mut cum = 0.0;
        for a in 0..k {
            cum += self.prob(context, a);
            if u < cum {
                return a;
            }
        }
        k - 1 // guard against cumulative rounding just below 1
    }
}

/// Softmax policy over linear scores: π(a|x) ∝ exp((wₐ·x) / τ).
///
/// `inverse_temperature` τ divides the logits, so **larger τ flattens** the
/// distribution toward uniform and τ → 0⁺ sharpens it toward the argmax.
/// Parameters are the weight matrix only; `grad_log_prob` returns the
/// action_count × feature_dim matrix flattened row-major (all of row 0, then
/// row 1, …) and includes the 1/τ factor.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSoftmaxPolicy {
    weights: Vec<Vec<f64>>,
    inverse_temperature: f64,
}

impl LinearSoftmaxPolicy {
    pub fn new(weights: Vec<Vec<f64>>, inverse_temperature: f64) -> Result<Self, CoreError> {
        if weights.is_empty() || weights[0].is_empty() {
            return Err(CoreError::InvalidArgument(
                "weight matrix must be non-empty".into(),
            ));
        }
        let dim = weights[0].len();
        if weights.iter().any(|row| row.len() != dim) {
            return Err(CoreError::InvalidArgument("ragged weight matrix".into()));
        }
        if weights.iter().flatten().any(|v| !v.is_finite()) {
            return Err(CoreError::InvalidArgument("non-finite weight".into()));
        }
        if !(inverse_temperature > 0.0) || !inverse_temperature.is_finite() {
            return Err(CoreError::InvalidArgument(format!(
                "inverse temperature must be positive and finite, got {inverse_temperature}"
            )));
        }
        Ok(Self { weights, inverse_temperature })
    }

    /// Uniform policy: all-zero weights over `action_count` actions.
    pub fn zeros(action_count: usize, feature_dim: usize) -> Self {
        Self {
            weights: vec![vec![0.0; feature_dim]; action_count],
            inverse_temperature: 1.0,
        }
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn weights_mut(&mut self) -> &mut Vec<Vec<f64>> {
        &mut self.weights
    }

    pub fn inverse_temperature(&self) -> f64 {
        self.inverse_temperature
    }

    pub fn feature_dim(&self) -> usize {
        self.weights[0].len()
    }

    /// Same weights served at a different temperature.
    pub fn with_inverse_temperature(&self, tau: f64) -> Result<Self, CoreError> {
        Self::new(self.weights.clone(), tau)
    }

    /// Full probability vector π(· | x) via max-shifted softmax.
    pub fn probs(&self, context: &[f64]) -> Vec<f64> {
        let logits: Vec<f64> = self
            .weights
            .iter()
            .map(|row| dot(row, context) / self.inverse_temperature)
            .collect();
        let m = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let exps: Vec<f64> = logits.iter().map(|&l| (l - m).exp()).collect();
        let total: f64 = exps.iter().sum();
        exps.iter().map(|&e| e / total).collect()
    }

    /// Index of the most probable action; exact ties break toward the lowest
    /// index.
    pub fn argmax_action(&self, context: &[f64]) -> usize {
        let mut best = 0usize;
        let mut best_score = dot(&self.weights[0], context);
        for (a, row) in self.weights.iter().enumerate().skip(1) {
            let score = dot(row, context);
            if score > best_score {
                best = a;
                best_score = score;
            }
        }
        best
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Policy for LinearSoftmaxPolicy {
    fn action_count(&self) -> usize {
        self.weights.len()
    }

    fn prob(&self, context: &[f64], action: usize) -> f64 {
        self.probs(context)[action]
    }

    fn grad_log_prob(&self, context: &[f64], action: usize) -> Vec<f64> {
        // d log π(a|x) / d w[c][j] = (1{c==a} − π(c|x)) · x_j / τ
        let probs = self.probs(context);
        let k = self.action_count();
        let d = self.feature_dim();
        let mut grad = vec![0.0; k * d];
        for c in 0..k {
            let indicator = if c == action { 1.0 } else { 0.0 };
            let coef = (indicator - probs[c]) / self.inverse_temperature;
            for j in 0..d {
                grad[c * d + j] = coef * context[j];
            }
        }
        grad
    }
}
