use crate::config::LambdaSelectConfig;
use crate::error::SelectError;
use crate::moments::empirical_nu;
use lbf_core::WeightedSample;

/// Leading coefficient of the data-driven tilt rule:
/// f(ε) = (e(1+ε)/ε · (1−ε + √((1−ε)² + 8ε/(3e(1+ε)))))^{2/(1+ε)}.
///
/// Defined for ε ∈ (0, 1]; at ε = 0 the expression divides by zero, which is
/// reported as an error so the caller can fall back to grid search.
pub fn f_of_epsilon(epsilon: f64) -> Result<f64, SelectError> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(SelectError::InvalidParameter(format!(
            "closed-form coefficient needs a heavy-tail order in (0, 1], got {epsilon}"
        )));
    }
    let e = std::f64::consts::E;
    let one_minus = 1.0 - epsilon;
    let root = (one_minus * one_minus + 8.0 * epsilon / (3.0 * e * (1.0 + epsilon))).sqrt();
    let inner = e * (1.0 + epsilon) / epsilon * (one_minus + root);
    Ok(inner.powf(2.0 / (1.0 + epsilon)))
}

/// Data-driven tilt magnitude with its clamp indicator.
///
/// `clamped` records that the closed-form value exceeded 1 and was capped;
/// the derivation is only valid for magnitudes up to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataDrivenLambda {
    pub magnitude: f64,
    pub clamped: bool,
}

/// Closed-form tilt magnitude from pre-computed moment statistics:
/// min{ f(ε)·(ln(1/δ)/(ν̂·n))^{1/(1+ε)}, 1 }.
pub fn lambda_data_driven_from_moments(
    nu_hat: f64,
    n: usize,
    epsilon: f64,
    delta: f64,
) -> Result<DataDrivenLambda, SelectError> {
    if !(nu_hat > 0.0 && nu_hat.is_finite()) {
        return Err(SelectError::DegenerateInput(format!(
            "the empirical moment must be positive and finite, got {nu_hat}"
        )));
    }
    if n == 0 {
        return Err(SelectError::EmptyInput);
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(SelectError::InvalidParameter(format!(
            "confidence level must lie in (0, 1), got {delta}"
        )));
    }
    let coefficient = f_of_epsilon(epsilon)?;
    let unclamped = coefficient
        * ((1.0 / delta).ln() / (nu_hat * n as f64)).powf(1.0 / (1.0 + epsilon));
    Ok(DataDrivenLambda { magnitude: unclamped.min(1.0), clamped: unclamped > 1.0 })
}

/// Data-driven tilt magnitude computed from the samples themselves.
///
/// All-zero rewards give a zero moment and are rejected: the rule has no
/// information to scale with.
pub fn lambda_data_driven(
    samples: &[WeightedSample],
    cfg: &LambdaSelectConfig,
) -> Result<DataDrivenLambda, SelectError> {
    let nu_hat = empirical_nu(samples, cfg.epsilon)?;
    if nu_hat == 0.0 {
        return Err(SelectError::DegenerateInput(
            "all weighted rewards are zero; the data-driven rule is undefined".into(),
        ));
    }
    lambda_data_driven_from_moments(nu_hat, samples.len(), cfg.epsilon, cfg.delta)
}

/// Sample-size-only tilt magnitude n^{−1/(1+ε)}.
///
/// This is the rate-optimal choice when the moment level is treated as a
/// constant; it needs no data beyond the sample count.
pub fn lambda_adaptive(n: usize, epsilon: f64) -> Result<f64, SelectError> {
    if n == 0 {
        return Err(SelectError::InvalidParameter(
            "sample count must be at least 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(SelectError::InvalidParameter(format!(
            "heavy-tail order must lie in [0, 1], got {epsilon}"
        )));
    }
    Ok((n as f64).powf(-1.0 / (1.0 + epsilon)))
}
