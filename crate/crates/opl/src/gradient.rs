use crate::error::OplError;
use estimators::{evaluate, EstimatorKind, EstimatorSpec};
use lbf_core::{LbfRecord, LinearSoftmaxPolicy, Policy, RawSample};

/// Gradient of the tilted-aggregate objective with respect to the policy
/// weight matrix, evaluated on one mini-batch:
///
///   ∇θ V̂ = (1/n) Σᵢ rᵢ · e^{λ(wᵢrᵢ − V̂)} · wᵢ ∇θ log π_θ(aᵢ|xᵢ),  λ = −magnitude,
///
/// where V̂ is the batch's own aggregate value. Exact for the batch: matches
/// central finite differences of the estimate.
pub fn lse_objective_gradient(
    batch: &[LbfRecord],
    policy: &LinearSoftmaxPolicy,
    lambda_magnitude: f64,
    floor: f64,
) -> Result<Vec<Vec<f64>>, OplError> {
    objective_gradient_core(batch, policy, &EstimatorSpec::lse(lambda_magnitude), floor)
}

/// Gradient of a baseline estimator objective on one mini-batch. Separable
/// estimators differentiate term-wise through the weight (and through the
/// target probability directly where it appears outside the ratio); the
/// self-normalized estimator uses the quotient rule over the batch. The
/// clipped-weight estimator takes subgradient 0 at and beyond the clip.
///
/// Rejects the tilted-aggregate kind — that objective has its own entry
/// point, [`lse_objective_gradient`].
pub fn baseline_objective_gradient(
    batch: &[LbfRecord],
    policy: &LinearSoftmaxPolicy,
    spec: &EstimatorSpec,
    floor: f64,
) -> Result<Vec<Vec<f64>>, OplError> {
    if spec.kind == EstimatorKind::Lse {
        return Err(OplError::InvalidParameter(
            "use the dedicated tilted-objective gradient for this estimator".into(),
        ));
    }
    objective_gradient_core(batch, policy, spec, floor)
}

/// The estimator objective evaluated on a record slice under the current
/// policy (importance weights recomputed, propensities floored).
pub fn objective_value(
    records: &[LbfRecord],
    policy: &LinearSoftmaxPolicy,
    spec: &EstimatorSpec,
    floor: f64,
) -> Result<f64, OplError> {
    let (raw, _) = raw_samples_with_probs(records, policy, floor)?;
    Ok(evaluate(spec, &raw)?)
}

/// Trainer-side dispatcher over all estimator kinds.
pub(crate) fn objective_gradient(
    batch: &[LbfRecord],
    policy: &LinearSoftmaxPolicy,
    spec: &EstimatorSpec,
    floor: f64,
) -> Result<Vec<Vec<f64>>, OplError> {
    objective_gradient_core(batch, policy, spec, floor)
}

fn raw_samples_with_probs(
    batch: &[LbfRecord],
    policy: &LinearSoftmaxPolicy,
    floor: f64,
) -> Result<(Vec<RawSample>, Vec<Vec<f64>>), OplError> {
    if batch.is_empty() {
        return Err(OplError::InvalidData("empty batch".into()));
    }
    if !(0.0..1.0).contains(&floor) {
        return Err(OplError::InvalidParameter(format!(
            "propensity floor must lie in [0, 1), got {floor}"
        )));
    }
    let dim = policy.feature_dim();
    let k = policy.action_count();
    let mut raw = Vec::with_capacity(batch.len());
    let mut prob_rows = Vec::with_capacity(batch.len());
    for (i, rec) in batch.iter().enumerate() {
        if rec.context.len() != dim {
            return Err(OplError::InvalidData(format!(
                "record {i} has {} features, policy expects {dim}",
                rec.context.len()
            )));
        }
        if rec.action >= k {
            return Err(OplError::InvalidData(format!(
                "record {i} action {} out of range for {k} actions",
                rec.action
            )));
        }
        let probs = policy.probs(&rec.context);
        raw.push(RawSample {
            target_prob: probs[rec.action],
            logging_prob: rec.propensity.max(floor),
            reward: rec.reward,
        });
        prob_rows.push(probs);
    }
    Ok((raw, prob_rows))
}

fn objective_gradient_core(
    batch: &[LbfRecord],
    policy: &LinearSoftmaxPolicy,
    spec: &EstimatorSpec,
    floor: f64,
) -> Result<Vec<Vec<f64>>, OplError> {
    let (raw, prob_rows) = raw_samples_with_probs(batch, policy, floor)?;
    // Reuses the estimator's own evaluation both to validate the spec's
    // parameters (identical error surface) and to obtain the batch aggregate
    // the self-normalized and tilted objectives need.
    let value = evaluate(spec, &raw)?;

    let n = batch.len() as f64;
    let weight_sum: f64 = raw.iter().map(|s| s.target_prob / s.logging_prob).sum();

    // q_i: multiplier of ∇θ log π(aᵢ|xᵢ) in ∇θ(objective) = Σᵢ qᵢ·∇θ log πᵢ.
    let coefficient = |s: &RawSample| -> f64 {
        let w = s.target_prob / s.logging_prob;
        let r = s.reward;
        match spec.kind {
            EstimatorKind::Ips => w * r / n,
            EstimatorKind::IpsTr => {
                if w < spec.param {
                    w * r / n
                } else {
                    0.0
                }
            }
            EstimatorKind::Snips => (r - value) * w / weight_sum,
            EstimatorKind::Pm => {
                let lambda_hat = spec.param;
                if lambda_hat == 0.0 {
                    return w * r / n; // exact plain-weighting reduction
                }
                let s_exp = spec.pm_exponent();
                let w_pow = w.powf(s_exp);
                let inner = (1.0 - lambda_hat) * w_pow + lambda_hat;
                r * (1.0 - lambda_hat) * w_pow * inner.powf((1.0 - s_exp) / s_exp) / n
            }
            // Terms linear in the target probability: d/dθ t = t·∇log π.
            EstimatorKind::Es | EstimatorKind::Ix | EstimatorKind::LsLin => {
                let term = match spec.kind {
                    EstimatorKind::Es => {
                        if spec.param == 0.0 {
                            r * s.target_prob
                        } else {
                            r * s.target_prob / s.logging_prob.powf(spec.param)
                        }
                    }
                    EstimatorKind::Ix => r * s.target_prob / (s.logging_prob + spec.param),
                    _ => {
                        s.target_prob * (spec.param * r / s.logging_prob).ln_1p() / spec.param
                    }
                };
                term / n
            }
            EstimatorKind::Os => {
                let tau = spec.param;
                let denom = w * w + tau;
                r * tau * w * (tau - w * w) / (denom * denom) / n
            }
            EstimatorKind::Ls => {
                let lt = spec.param;
                r * w / (1.0 + lt * w * r) / n
            }
            EstimatorKind::Lse => {
                let lambda = -spec.param;
                r * (lambda * (w * r - value)).exp() * w / n
            }
        }
    };

    let k = policy.action_count();
    let dim = policy.feature_dim();
    let tau = policy.inverse_temperature();
    let mut grad = vec![vec![0.0; dim]; k];
    for (rec, (s, probs)) in batch.iter().zip(raw.iter().zip(&prob_rows)) {
        let q = coefficient(s);
        if q == 0.0 {
            continue;
        }
        for c in 0..k {
            let indicator = if c == rec.action { 1.0 } else { 0.0 };
            let scale = q * (indicator - probs[c]) / tau;
            let row = &mut grad[c];
            for (g, x) in row.iter_mut().zip(&rec.context) {
                *g += scale * x;
            }
        }
    }
    Ok(grad)
}
