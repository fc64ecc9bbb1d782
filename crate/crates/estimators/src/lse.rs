use crate::error::EstimatorError;
use lbf_core::WeightedSample;

fn check_inputs(z: &[f64], lambda_magnitude: f64) -> Result<(), EstimatorError> {
    if z.is_empty() {
        return Err(EstimatorError::EmptyInput);
    }
    if !(lambda_magnitude > 0.0) || !lambda_magnitude.is_finite() {
        return Err(EstimatorError::InvalidParameter(format!(
            "tilt magnitude must be positive and finite, got {lambda_magnitude}"
        )));
    }
    if let Some(bad) = z.iter().find(|v| !v.is_finite()) {
        return Err(EstimatorError::NonFinite(format!("input value {bad}")));
    }
    Ok(())
}

/// Log-sum-exponential aggregate of arbitrary finite values:
/// (1/λ)·log((1/n)·Σ e^{λzᵢ}) with λ = −lambda_magnitude.
///
/// Numerically the sum is shifted by min(z): for λ < 0 the largest exponent
/// argument is λ·min(z), so every shifted exponent is ≤ 0 and the sum can
/// neither overflow nor lose its leading term. Constant inputs return the
/// constant exactly. The result is clamped to the mathematically guaranteed
/// envelope [min(z), mean(z)] so the shrinkage bounds survive rounding.
///
/// Inputs may be negative (used for residual aggregation); the value-estimator
/// entry point [`estimate_lse`] receives non-negative weighted rewards by
/// construction.
pub fn lse_of_values(z: &[f64], lambda_magnitude: f64) -> Result<f64, EstimatorError> {
    check_inputs(z, lambda_magnitude)?;
    let lambda = -lambda_magnitude;
    let z_min = z.iter().cloned().fold(f64::INFINITY, f64::min);
    let mean_shifted_exp: f64 =
        z.iter().map(|&v| (lambda * (v - z_min)).exp()).sum::<f64>() / z.len() as f64;
    let value = z_min + mean_shifted_exp.ln() / lambda;
    let z_mean = z.iter().sum::<f64>() / z.len() as f64;
    // The rounded mean can dip an ulp below min(z) for constant inputs; the
    // guard keeps the clamp from dragging the exact answer down with it.
    Ok(value.max(z_min).min(z_mean.max(z_min)))
}

/// LSE value estimate over importance-weighted samples.
pub fn estimate_lse(
    samples: &[WeightedSample],
    lambda_magnitude: f64,
) -> Result<f64, EstimatorError> {
    let z: Vec<f64> = samples.iter().map(|s| s.weighted_reward).collect();
    lse_of_values(&z, lambda_magnitude)
}

/// Gradient of the LSE with respect to each input value: the softmax of the
/// tilted values, softmax(λz₁,…,λzₙ). Non-negative, sums to 1; with λ < 0 the
/// largest input receives the smallest weight.
pub fn lse_gradient_weights(z: &[f64], lambda_magnitude: f64) -> Result<Vec<f64>, EstimatorError> {
    check_inputs(z, lambda_magnitude)?;
    let lambda = -lambda_magnitude;
    let z_min = z.iter().cloned().fold(f64::INFINITY, f64::min);
    let exps: Vec<f64> = z.iter().map(|&v| (lambda * (v - z_min)).exp()).collect();
    let total: f64 = exps.iter().sum();
    Ok(exps.iter().map(|&e| e / total).collect())
}

/// The two analytic endpoints of the LSE in its tilt parameter: the mean of
/// the inputs (tilt → 0) and their minimum (tilt → −∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LseLimits {
    pub at_zero: f64,
    pub at_neg_inf: f64,
}

pub fn lse_limits(z: &[f64]) -> Result<LseLimits, EstimatorError> {
    if z.is_empty() {
        return Err(EstimatorError::EmptyInput);
    }
    if let Some(bad) = z.iter().find(|v| !v.is_finite()) {
        return Err(EstimatorError::NonFinite(format!("input value {bad}")));
    }
    Ok(LseLimits {
        at_zero: z.iter().sum::<f64>() / z.len() as f64,
        at_neg_inf: z.iter().cloned().fold(f64::INFINITY, f64::min),
    })
}

/// How much the LSE shrinks the plain average: mean(z) − LSE(z).
///
/// Equals (1/λ_magnitude)·KL(uniform ‖ softmax(λz)) — the aggregate pays for
/// robustness exactly the scaled divergence between equal weighting and the
/// tilted weighting.
pub fn lse_shrinkage_gap(z: &[f64], lambda_magnitude: f64) -> Result<f64, EstimatorError> {
    let limits = lse_limits(z)?;
    let value = lse_of_values(z, lambda_magnitude)?;
    // Floored at zero: the gap is non-negative by Jensen, and the floor only
    // absorbs the ulp-level rounding of the sample mean.
    Ok((limits.at_zero - value).max(0.0))
}

/// Evaluates Σpᵢzᵢ + (1/λ_magnitude)·KL(p ‖ uniform) at its closed-form
/// minimizer p* ∝ e^{λzᵢ}; the minimum equals the LSE value.
pub fn lse_kl_regularized_value(
    z: &[f64],
    lambda_magnitude: f64,
) -> Result<f64, EstimatorError> {
    let p = lse_gradient_weights(z, lambda_magnitude)?;
    Ok(kl_regularized_objective(z, &p, lambda_magnitude))
}

/// The regularized objective at an arbitrary simplex point; public so tests
/// can verify the Gibbs point is the minimizer.
pub fn kl_regularized_objective(z: &[f64], p: &[f64], lambda_magnitude: f64) -> f64 {
    let n = z.len() as f64;
    let linear: f64 = z.iter().zip(p).map(|(&v, &pi)| pi * v).sum();
    let kl: f64 = p
        .iter()
        .map(|&pi| if pi > 0.0 { pi * (pi * n).ln() } else { 0.0 })
        .sum();
    linear + kl / lambda_magnitude
}
