use crate::data::{LbfDataset, LbfRecord};
use crate::error::CoreError;
use crate::policy::Policy;
use crate::rng::RngHandle;

/// Converts a supervised classification set into logged bandit feedback.
///
/// For each sample the logging policy draws an action, records its own
/// probability for that action as the propensity, and the reward is 1 when
/// the action equals the true label, 0 otherwise.
pub fn supervised_to_bandit(
    features: &[Vec<f64>],
    labels: &[usize],
    logging: &dyn Policy,
    rng: RngHandle,
) -> Result<LbfDataset, CoreError> {
    if features.len() != labels.len() {
        return Err(CoreError::InvalidArgument(format!(
            "{} feature rows vs {} labels",
            features.len(),
            labels.len()
        )));
    }
    let k = logging.action_count();
    if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
        return Err(CoreError::InvalidArgument(format!(
            "label {bad} out of range for {k} actions"
        )));
    }
    let mut gen = rng.rng();
    let records: Result<Vec<_>, CoreError> = features
        .iter()
        .zip(labels)
        .map(|(x, &y)| {
            let action = logging.sample(x, &mut gen);
            let propensity = logging.prob(x, action).min(1.0);
            let reward = if action == y { 1.0 } else { 0.0 };
            LbfRecord::new(x.clone(), action, propensity, reward)
        })
        .collect();
    LbfDataset::new(records?, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::LinearSoftmaxPolicy;

    #[test]
    fn uniform_logging_hits_one_over_k() {
        let k = 4;
        let n = 20_000;
        let logging = LinearSoftmaxPolicy::zeros(k, 2);
        let features = vec![vec![0.5, -0.5]; n];
        let labels = vec![2usize; n];
        let ds = supervised_to_bandit(&features, &labels, &logging, RngHandle::new(5)).unwrap();
        let mean_reward: f64 =
            ds.records().iter().map(|r| r.reward).sum::<f64>() / ds.len() as f64;
        let p = 1.0 / k as f64;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!((mean_reward - p).abs() < 3.0 * sigma, "mean reward {mean_reward}");
        for r in ds.records() {
            assert!((r.propensity - p).abs() < 1e-12);
        }
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let logging = LinearSoftmaxPolicy::zeros(3, 1);
        let features: Vec<Vec<f64>> = (0..50).map(|i| vec![i as f64 / 10.0]).collect();
        let labels: Vec<usize> = (0..50).map(|i| i % 3).collect();
        let a = supervised_to_bandit(&features, &labels, &logging, RngHandle::new(9)).unwrap();
        let b = supervised_to_bandit(&features, &labels, &logging, RngHandle::new(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn peaked_logging_on_labels_gives_reward_one() {
        // Strongly separated one-hot features with a sharp policy make the
        // sampled action equal the label essentially always.
        let scale = 50.0;
        let w: Vec<Vec<f64>> = (0..3)
            .map(|a| (0..3).map(|j| if a == j { scale } else { 0.0 }).collect())
            .collect();
        let logging = LinearSoftmaxPolicy::new(w, 1.0).unwrap();
        let features: Vec<Vec<f64>> = (0..30)
            .map(|i| {
                let mut x = vec![0.0; 3];
                x[i % 3] = 1.0;
                x
            })
            .collect();
        let labels: Vec<usize> = (0..30).map(|i| i % 3).collect();
        let ds = supervised_to_bandit(&features, &labels, &logging, RngHandle::new(3)).unwrap();
        for r in ds.records() {
            assert_eq!(r.reward, 1.0);
            assert!(r.propensity > 0.99);
        }
    }
}
