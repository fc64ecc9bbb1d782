use crate::error::OpeError;

/// Monte-Carlo summary of repeated estimates against a known ground truth.
///
/// `bias` is signed: mean(estimates) − truth. `variance` and `mse` use the
/// population denominator (the trial count itself), which makes the moment
/// identity mse = bias² + variance hold exactly in real arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialStats {
    pub bias: f64,
    pub variance: f64,
    pub mse: f64,
    pub n_trials: usize,
    pub n_samples: usize,
}

impl TrialStats {
    pub fn from_estimates(
        estimates: &[f64],
        true_value: f64,
        n_samples: usize,
    ) -> Result<Self, OpeError> {
        if estimates.is_empty() {
            return Err(OpeError::InvalidParameter(
                "statistics need at least one estimate".into(),
            ));
        }
        let n = estimates.len() as f64;
        let mean = estimates.iter().sum::<f64>() / n;
        let variance = estimates.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / n;
        let mse = estimates
            .iter()
            .map(|e| (e - true_value) * (e - true_value))
            .sum::<f64>()
            / n;
        Ok(Self {
            bias: mean - true_value,
            variance,
            mse,
            n_trials: estimates.len(),
            n_samples,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn constant_estimates_have_zero_variance() {
        let s = TrialStats::from_estimates(&[2.5, 2.5, 2.5], 2.0, 10).unwrap();
        assert_eq!(s.bias, 0.5);
        assert_eq!(s.variance, 0.0);
        assert!((s.mse - 0.25).abs() < 1e-15);
        assert_eq!(s.n_trials, 3);
        assert_eq!(s.n_samples, 10);
    }

    #[test]
    fn moment_identity_holds_on_random_estimates() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..20 {
            let estimates: Vec<f64> =
                (0..500).map(|_| rng.gen_range(-3.0f64..8.0)).collect();
            let truth = rng.gen_range(-2.0..2.0);
            let s = TrialStats::from_estimates(&estimates, truth, 1).unwrap();
            let reconstructed = s.bias * s.bias + s.variance;
            assert!(
                (reconstructed - s.mse).abs() <= 1e-9 * s.mse.max(1e-300),
                "identity broke: {} vs {}",
                reconstructed,
                s.mse
            );
        }
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(TrialStats::from_estimates(&[], 0.0, 1).is_err());
    }
}
