use crate::error::SelectError;
use lbf_core::WeightedSample;

/// Empirical (1+ε)-th moment of the weighted reward: (1/n)·Σ(wᵢrᵢ)^{1+ε}.
///
/// At ε = 0 this is exactly the plain importance-sampling estimate.
pub fn empirical_nu(samples: &[WeightedSample], epsilon: f64) -> Result<f64, SelectError> {
    if samples.is_empty() {
        return Err(SelectError::EmptyInput);
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(SelectError::InvalidParameter(format!(
            "heavy-tail order must lie in [0, 1], got {epsilon}"
        )));
    }
    let sum: f64 = if epsilon == 0.0 {
        samples.iter().map(|s| s.weighted_reward).sum()
    } else {
        samples.iter().map(|s| s.weighted_reward.powf(1.0 + epsilon)).sum()
    };
    Ok(sum / samples.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use estimators::estimate_ips;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ws(weight: f64, reward: f64) -> WeightedSample {
        WeightedSample::new(weight, reward)
    }

    #[test]
    fn unit_values_give_unit_moment() {
        let s = [ws(1.0, 1.0), ws(2.0, 0.5), ws(0.5, 2.0)];
        for &eps in &[0.0, 0.25, 0.5, 1.0] {
            assert_eq!(empirical_nu(&s, eps).unwrap(), 1.0);
        }
    }

    #[test]
    fn second_moment_hand_case() {
        let s = [ws(1.0, 0.0), ws(2.0, 1.0)];
        assert_eq!(empirical_nu(&s, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn order_zero_is_exactly_the_ips_estimate() {
        let mut rng = StdRng::seed_from_u64(7);
        let s: Vec<WeightedSample> = (0..100)
            .map(|_| ws(rng.gen_range(0.01..20.0), rng.gen_range(0.0..1.0)))
            .collect();
        assert_eq!(empirical_nu(&s, 0.0).unwrap(), estimate_ips(&s).unwrap());
    }

    #[test]
    fn validates_inputs() {
        assert!(matches!(empirical_nu(&[], 1.0), Err(SelectError::EmptyInput)));
        assert!(empirical_nu(&[ws(1.0, 1.0)], -0.1).is_err());
        assert!(empirical_nu(&[ws(1.0, 1.0)], 1.1).is_err());
    }
}
