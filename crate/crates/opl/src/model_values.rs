use crate::error::OplError;
use crate::reward_model::RewardModel;
use estimators::lse_of_values;
use lbf_core::{compute_raw_samples, LbfDataset, LinearSoftmaxPolicy, Policy};

fn check_shapes(
    dataset: &LbfDataset,
    policy: &LinearSoftmaxPolicy,
    model: &RewardModel,
) -> Result<(), OplError> {
    if policy.action_count() != dataset.action_count()
        || model.action_count() != dataset.action_count()
    {
        return Err(OplError::InvalidData(format!(
            "action counts disagree: dataset {}, policy {}, model {}",
            dataset.action_count(),
            policy.action_count(),
            model.action_count()
        )));
    }
    if policy.feature_dim() != dataset.feature_dim() || model.feature_dim() != dataset.feature_dim()
    {
        return Err(OplError::InvalidData(format!(
            "feature dims disagree: dataset {}, policy {}, model {}",
            dataset.feature_dim(),
            policy.feature_dim(),
            model.feature_dim()
        )));
    }
    Ok(())
}

/// Model-based (direct-method) policy value: the model's predicted reward
/// averaged over contexts under the policy's action distribution,
/// (1/n)·Σᵢ Σₐ π(a|xᵢ)·r̂(xᵢ, a).
pub fn dm_value(
    dataset: &LbfDataset,
    policy: &LinearSoftmaxPolicy,
    model: &RewardModel,
) -> Result<f64, OplError> {
    check_shapes(dataset, policy, model)?;
    let k = dataset.action_count();
    let mut total = 0.0;
    for rec in dataset.records() {
        let probs = policy.probs(&rec.context);
        for a in 0..k {
            total += probs[a] * model.predict(&rec.context, a);
        }
    }
    Ok(total / dataset.len() as f64)
}

/// Residual terms wᵢ·(rᵢ − r̂(xᵢ, aᵢ)) in dataset order.
fn weighted_residuals(
    dataset: &LbfDataset,
    policy: &LinearSoftmaxPolicy,
    model: &RewardModel,
    floor: f64,
) -> Result<Vec<f64>, OplError> {
    let raw = compute_raw_samples(dataset, policy, floor)?;
    Ok(dataset
        .records()
        .iter()
        .zip(&raw)
        .map(|(rec, s)| {
            let w = s.target_prob / s.logging_prob;
            w * (rec.reward - model.predict(&rec.context, rec.action))
        })
        .collect())
}

/// Doubly-robust value: the model-based value plus the importance-weighted
/// mean of the model's residuals. A perfect model zeroes the correction; a
/// zero model recovers plain importance sampling.
pub fn dr_value(
    dataset: &LbfDataset,
    policy: &LinearSoftmaxPolicy,
    model: &RewardModel,
    floor: f64,
) -> Result<f64, OplError> {
    check_shapes(dataset, policy, model)?;
    let residuals = weighted_residuals(dataset, policy, model, floor)?;
    let correction = residuals.iter().sum::<f64>() / residuals.len() as f64;
    Ok(dm_value(dataset, policy, model)? + correction)
}

/// Doubly-robust value with the residual correction aggregated by the tilted
/// log-sum-exponential instead of the mean:
/// DM + (1/λ)·log((1/n)·Σ e^{λ·wᵢ(rᵢ−r̂ᵢ)}), λ = −lambda_magnitude.
///
/// Residuals are signed — rewards below the model's prediction enter as
/// negative inputs. The aggregate handles them with the same stable shift;
/// the non-negativity assumed when estimating raw values is a property of
/// that use case, not of the transform.
pub fn dr_lse_value(
    dataset: &LbfDataset,
    policy: &LinearSoftmaxPolicy,
    model: &RewardModel,
    lambda_magnitude: f64,
    floor: f64,
) -> Result<f64, OplError> {
    check_shapes(dataset, policy, model)?;
    let residuals = weighted_residuals(dataset, policy, model, floor)?;
    let correction = lse_of_values(&residuals, lambda_magnitude)?;
    Ok(dm_value(dataset, policy, model)? + correction)
}
