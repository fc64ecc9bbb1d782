use crate::error::EstimatorError;
use lbf_core::{RawSample, WeightedSample};

fn check_nonempty<T>(samples: &[T]) -> Result<(), EstimatorError> {
    if samples.is_empty() {
        Err(EstimatorError::EmptyInput)
    } else {
        Ok(())
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for v in values {
        sum += v;
        count += 1;
    }
    sum / count as f64
}

/// Plain importance sampling: mean of wᵢrᵢ.
pub fn estimate_ips(samples: &[WeightedSample]) -> Result<f64, EstimatorError> {
    check_nonempty(samples)?;
    Ok(mean(samples.iter().map(|s| s.weighted_reward)))
}

/// Per-sample transform of the clipped-weight estimator; exposed for the
/// gradient code.
pub(crate) fn ips_tr_term(s: &WeightedSample, clip: f64) -> f64 {
    s.reward * s.weight.min(clip)
}

/// Importance sampling with weights clipped at `clip` (M = ∞ recovers IPS).
pub fn estimate_ips_tr(samples: &[WeightedSample], clip: f64) -> Result<f64, EstimatorError> {
    check_nonempty(samples)?;
    if !(clip > 0.0) {
        return Err(EstimatorError::InvalidParameter(format!(
            "clip level must be positive, got {clip}"
        )));
    }
    Ok(mean(samples.iter().map(|s| ips_tr_term(s, clip))))
}

/// Self-normalized importance sampling: Σwᵢrᵢ / Σwᵢ.
pub fn estimate_snips(samples: &[WeightedSample]) -> Result<f64, EstimatorError> {
    check_nonempty(samples)?;
    let weight_sum: f64 = samples.iter().map(|s| s.weight).sum();
    if !(weight_sum > 0.0) {
        return Err(EstimatorError::DegenerateInput(
            "self-normalization requires a positive weight sum".into(),
        ));
    }
    let weighted_sum: f64 = samples.iter().map(|s| s.weighted_reward).sum();
    Ok(weighted_sum / weight_sum)
}

pub(crate) fn pm_term(
    s: &WeightedSample,
    lambda_hat: f64,
    exponent: f64,
) -> Result<f64, EstimatorError> {
    if lambda_hat == 0.0 {
        // Exact IPS reduction, bypassing the power round-trip.
        return Ok(s.weighted_reward);
    }
    if s.weight == 0.0 && exponent < 0.0 {
        return Err(EstimatorError::DegenerateInput(
            "zero weight with a negative power exponent".into(),
        ));
    }
    let inner = (1.0 - lambda_hat) * s.weight.powf(exponent) + lambda_hat;
    Ok(s.reward * inner.powf(1.0 / exponent))
}

/// Power-mean estimator: mean of r·((1−λ̂)wˢ + λ̂)^{1/s}.
///
/// λ̂ = 0 recovers IPS exactly; λ̂ = 1 replaces every weight by 1.
pub fn estimate_pm(
    samples: &[WeightedSample],
    lambda_hat: f64,
    exponent: f64,
) -> Result<f64, EstimatorError> {
    check_nonempty(samples)?;
    if !(0.0..=1.0).contains(&lambda_hat) {
        return Err(EstimatorError::InvalidParameter(format!(
            "interpolation weight must lie in [0, 1], got {lambda_hat}"
        )));
    }
    if exponent == 0.0 || !exponent.is_finite() {
        return Err(EstimatorError::InvalidParameter(format!(
            "power exponent must be finite and non-zero, got {exponent}"
        )));
    }
    let mut sum = 0.0;
    for s in samples {
        sum += pm_term(s, lambda_hat, exponent)?;
    }
    Ok(sum / samples.len() as f64)
}

pub(crate) fn es_term(s: &RawSample, alpha: f64) -> f64 {
    if alpha == 1.0 {
        // Same operation order as the plain importance-weighted term, so the
        // α = 1 endpoint reproduces it bit for bit.
        s.target_prob / s.logging_prob * s.reward
    } else if alpha == 0.0 {
        s.reward * s.target_prob
    } else {
        s.reward * s.target_prob / s.logging_prob.powf(alpha)
    }
}

/// Exponential-smoothing estimator: mean of r·π_target/π_log^α.
///
/// α = 1 recovers IPS exactly; α = 0 drops the propensity entirely.
pub fn estimate_es(samples: &[RawSample], alpha: f64) -> Result<f64, EstimatorError> {
    check_nonempty(samples)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(EstimatorError::InvalidParameter(format!(
            "smoothing exponent must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(mean(samples.iter().map(|s| es_term(s, alpha))))
}

pub(crate) fn ix_term(s: &RawSample, eta: f64) -> f64 {
    s.reward * s.target_prob / (s.logging_prob + eta)
}

/// Implicit-exploration estimator: mean of r·π_target/(π_log+η).
pub fn estimate_ix(samples: &[RawSample], eta: f64) -> Result<f64, EstimatorError> {
    check_nonempty(samples)?;
    if !(eta > 0.0) {
        return Err(EstimatorError::InvalidParameter(format!(
            "exploration bonus must be positive, got {eta}"
        )));
    }
    Ok(mean(samples.iter().map(|s| ix_term(s, eta))))
}

pub(crate) fn os_term(s: &WeightedSample, tau: f64) -> f64 {
    s.reward * tau * s.weight / (s.weight * s.weight + tau)
}

/// Optimistic-shrinkage estimator: mean of r·τw/(w²+τ).
pub fn estimate_os(samples: &[WeightedSample], tau: f64) -> Result<f64, EstimatorError> {
    check_nonempty(samples)?;
    if !(tau > 0.0) {
        return Err(EstimatorError::InvalidParameter(format!(
            "shrinkage parameter must be positive, got {tau}"
        )));
    }
    Ok(mean(samples.iter().map(|s| os_term(s, tau))))
}

pub(crate) fn ls_term(s: &WeightedSample, lambda_tilde: f64) -> f64 {
    (lambda_tilde * s.weighted_reward).ln_1p() / lambda_tilde
}

/// Log-smoothed estimator: mean of (1/λ̃)·log(1+λ̃wr). Always ≤ IPS.
pub fn estimate_ls(samples: &[WeightedSample], lambda_tilde: f64) -> Result<f64, EstimatorError> {
    check_nonempty(samples)?;
    if !(lambda_tilde > 0.0) {
        return Err(EstimatorError::InvalidParameter(format!(
            "smoothing rate must be positive, got {lambda_tilde}"
        )));
    }
    Ok(mean(samples.iter().map(|s| ls_term(s, lambda_tilde))))
}

pub(crate) fn ls_lin_term(s: &RawSample, lambda_tilde: f64) -> f64 {
    s.target_prob * (lambda_tilde * s.reward / s.logging_prob).ln_1p() / lambda_tilde
}

/// Linearized log-smoothed estimator: mean of π_target·(1/λ̃)·log(1+λ̃r/π_log).
pub fn estimate_ls_lin(samples: &[RawSample], lambda_tilde: f64) -> Result<f64, EstimatorError> {
    check_nonempty(samples)?;
    if !(lambda_tilde > 0.0) {
        return Err(EstimatorError::InvalidParameter(format!(
            "smoothing rate must be positive, got {lambda_tilde}"
        )));
    }
    Ok(mean(samples.iter().map(|s| ls_lin_term(s, lambda_tilde))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(weight: f64, reward: f64) -> WeightedSample {
        WeightedSample::new(weight, reward)
    }

    fn raw(target: f64, logging: f64, reward: f64) -> RawSample {
        RawSample { target_prob: target, logging_prob: logging, reward }
    }

    #[test]
    fn ips_is_the_mean_of_weighted_rewards() {
        let s = [ws(1.0, 0.5), ws(1.0, 0.5), ws(1.0, 0.5)];
        assert_eq!(estimate_ips(&s).unwrap(), 0.5);
        let s = [ws(1.0, 1.0), ws(1.0, 2.0), ws(1.0, 3.0)];
        assert_eq!(estimate_ips(&s).unwrap(), 2.0);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(estimate_ips(&[]), Err(EstimatorError::EmptyInput)));
    }

    #[test]
    fn clipping_at_infinity_recovers_ips() {
        let s = [ws(10.0, 1.0), ws(0.3, 2.0), ws(7.5, 0.1)];
        assert_eq!(
            estimate_ips_tr(&s, f64::INFINITY).unwrap(),
            estimate_ips(&s).unwrap()
        );
    }

    #[test]
    fn clipping_above_max_weight_matches_ips() {
        let s = [ws(3.0, 1.0), ws(0.5, 2.0), ws(1.5, 0.25)];
        let tr = estimate_ips_tr(&s, 100.0).unwrap();
        let ips = estimate_ips(&s).unwrap();
        assert!((tr - ips).abs() < 1e-12);
    }

    #[test]
    fn clipping_caps_heavy_weights() {
        let s = [ws(10.0, 1.0), ws(1.0, 1.0)];
        assert_eq!(estimate_ips_tr(&s, 2.0).unwrap(), 1.5);
    }

    #[test]
    fn snips_with_equal_weights_is_the_reward_mean() {
        let s = [ws(4.0, 0.2), ws(4.0, 0.4)];
        assert!((estimate_snips(&s).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn snips_hand_case_and_scale_invariance() {
        let s = [ws(1.0, 0.0), ws(3.0, 1.0)];
        assert!((estimate_snips(&s).unwrap() - 0.75).abs() < 1e-15);
        let scaled = [ws(7.0, 0.0), ws(21.0, 1.0)];
        assert_eq!(estimate_snips(&s).unwrap(), estimate_snips(&scaled).unwrap());
    }

    #[test]
    fn snips_rejects_all_zero_weights() {
        let s = [ws(0.0, 1.0), ws(0.0, 1.0)];
        assert!(estimate_snips(&s).is_err());
    }

    #[test]
    fn pm_reduces_to_ips_and_to_reward_mean() {
        let s = [ws(2.5, 1.0), ws(0.25, 3.0)];
        assert_eq!(
            estimate_pm(&s, 0.0, PM_DEFAULT_S_FOR_TESTS).unwrap(),
            estimate_ips(&s).unwrap()
        );
        let mean_reward = 2.0;
        assert!((estimate_pm(&s, 1.0, PM_DEFAULT_S_FOR_TESTS).unwrap() - mean_reward).abs() < 1e-12);
    }

    const PM_DEFAULT_S_FOR_TESTS: f64 = -1.0;

    #[test]
    fn pm_hand_case() {
        // w=4, r=1, λ̂=0.5, s=−1: (0.5·0.25 + 0.5)^{-1} = 1.6
        let s = [ws(4.0, 1.0)];
        assert!((estimate_pm(&s, 0.5, -1.0).unwrap() - 1.6).abs() < 1e-12);
    }

    #[test]
    fn pm_rejects_zero_weight_with_negative_exponent() {
        let s = [ws(0.0, 1.0)];
        assert!(estimate_pm(&s, 0.5, -1.0).is_err());
    }

    #[test]
    fn es_endpoints_and_hand_case() {
        let s = [raw(0.5, 0.25, 1.0)];
        assert!((estimate_es(&s, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((estimate_es(&s, 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((estimate_es(&s, 0.5).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ix_limits_and_hand_case() {
        let s = [raw(0.5, 0.5, 1.0)];
        assert!((estimate_ix(&s, 0.5).unwrap() - 0.5).abs() < 1e-15);
        let ips_like = estimate_ix(&s, 1e-12).unwrap();
        assert!((ips_like - 1.0).abs() < 1e-6);
        assert!(estimate_ix(&s, 1e9).unwrap() < 1e-9);
    }

    #[test]
    fn os_limits_and_hand_case() {
        let s = [ws(1.0, 1.0)];
        assert!((estimate_os(&s, 1.0).unwrap() - 0.5).abs() < 1e-15);
        let tame = [ws(10.0, 1.0), ws(0.1, 2.0)];
        let os = estimate_os(&tame, 1e12).unwrap();
        let ips = estimate_ips(&tame).unwrap();
        assert!((os - ips).abs() / ips < 1e-9);
        let zero = [ws(0.0, 5.0)];
        assert_eq!(estimate_os(&zero, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn ls_limits_hand_case_and_bound() {
        let s = [ws(std::f64::consts::E - 1.0, 1.0)];
        assert!((estimate_ls(&s, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let mixed = [ws(2.0, 1.5), ws(0.3, 0.2)];
        let near_ips = estimate_ls(&mixed, 1e-9).unwrap();
        let ips = estimate_ips(&mixed).unwrap();
        assert!((near_ips - ips).abs() / ips < 1e-5);
        assert!(estimate_ls(&mixed, 0.7).unwrap() <= ips);
    }

    #[test]
    fn ls_lin_limits_and_hand_case() {
        let s = [raw(1.0, 1.0, std::f64::consts::E - 1.0)];
        assert!((estimate_ls_lin(&s, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let zero_r = [raw(0.5, 0.25, 0.0)];
        assert_eq!(estimate_ls_lin(&zero_r, 2.0).unwrap(), 0.0);
        let mixed = [raw(0.6, 0.3, 1.2), raw(0.1, 0.8, 0.4)];
        let near_ips = estimate_ls_lin(&mixed, 1e-9).unwrap();
        let ips: f64 = mixed
            .iter()
            .map(|s| s.weighted().weighted_reward)
            .sum::<f64>()
            / 2.0;
        assert!((near_ips - ips).abs() / ips < 1e-5);
    }
}
