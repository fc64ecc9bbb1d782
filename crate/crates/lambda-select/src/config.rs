use crate::error::SelectError;

/// Shared knobs for the selection rules.
///
/// `epsilon` is the heavy-tail order: the weighted reward is assumed to have
/// a finite (1+ε)-th moment. `delta` is the confidence level of the
/// data-driven rule. `tv_estimate` is the total-variation budget between the
/// clean and corrupted reward distributions used by the noisy-reward rule —
/// it is not estimable from logged data alone, so it is a caller-supplied
/// quantity (default 0.1). `grid` holds the tilt-magnitude candidates for
/// grid search.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSelectConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub tv_estimate: f64,
    pub grid: Vec<f64>,
}

pub const DEFAULT_DELTA: f64 = 0.05;
pub const DEFAULT_TV_ESTIMATE: f64 = 0.1;

impl LambdaSelectConfig {
    pub fn new(
        epsilon: f64,
        delta: f64,
        tv_estimate: f64,
        grid: Vec<f64>,
    ) -> Result<Self, SelectError> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(SelectError::InvalidParameter(format!(
                "heavy-tail order must lie in [0, 1], got {epsilon}"
            )));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(SelectError::InvalidParameter(format!(
                "confidence level must lie in (0, 1), got {delta}"
            )));
        }
        if !(tv_estimate >= 0.0 && tv_estimate.is_finite()) {
            return Err(SelectError::InvalidParameter(format!(
                "total-variation budget must be a non-negative finite real, got {tv_estimate}"
            )));
        }
        if grid.is_empty() {
            return Err(SelectError::InvalidParameter(
                "candidate grid must be non-empty".into(),
            ));
        }
        if let Some(bad) = grid.iter().find(|g| !(**g > 0.0 && g.is_finite())) {
            return Err(SelectError::InvalidParameter(format!(
                "candidate grid must be strictly positive and finite, got {bad}"
            )));
        }
        Ok(Self { epsilon, delta, tv_estimate, grid })
    }
}

impl Default for LambdaSelectConfig {
    fn default() -> Self {
        Self {
            epsilon: 1.0,
            delta: DEFAULT_DELTA,
            tv_estimate: DEFAULT_TV_ESTIMATE,
            grid: vec![0.001, 0.01, 0.1, 1.0, 10.0, 100.0],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = LambdaSelectConfig::default();
        assert!(LambdaSelectConfig::new(
            cfg.epsilon,
            cfg.delta,
            cfg.tv_estimate,
            cfg.grid.clone()
        )
        .is_ok());
    }

    #[test]
    fn rejects_out_of_range_fields() {
        assert!(LambdaSelectConfig::new(1.5, 0.05, 0.1, vec![0.1]).is_err());
        assert!(LambdaSelectConfig::new(1.0, 0.0, 0.1, vec![0.1]).is_err());
        assert!(LambdaSelectConfig::new(1.0, 1.0, 0.1, vec![0.1]).is_err());
        assert!(LambdaSelectConfig::new(1.0, 0.05, -0.1, vec![0.1]).is_err());
        assert!(LambdaSelectConfig::new(1.0, 0.05, 0.1, vec![]).is_err());
        assert!(LambdaSelectConfig::new(1.0, 0.05, 0.1, vec![0.1, 0.0]).is_err());
    }
}
