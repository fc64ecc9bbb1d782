use crate::error::EstimatorError;
use crate::lse::lse_of_values;
use crate::separable::{
    es_term, estimate_es, estimate_ips, estimate_ips_tr, estimate_ix, estimate_ls,
    estimate_ls_lin, estimate_os, estimate_pm, estimate_snips, ips_tr_term, ix_term, ls_lin_term,
    ls_term, os_term, pm_term,
};
use crate::spec::{EstimateResult, EstimatorKind, EstimatorSpec};
use lbf_core::{compute_raw_samples, LbfDataset, Policy, RawSample, WeightedSample};

/// Applies the estimator described by `spec` to pre-computed samples.
///
/// This is the hot path used by the simulation harness: samples carry the raw
/// target/logging probabilities, so every estimator family — including the
/// ones that smooth the propensity rather than the weight — can be served.
pub fn evaluate(spec: &EstimatorSpec, samples: &[RawSample]) -> Result<f64, EstimatorError> {
    match spec.kind {
        EstimatorKind::Es => estimate_es(samples, spec.param),
        EstimatorKind::Ix => estimate_ix(samples, spec.param),
        EstimatorKind::LsLin => estimate_ls_lin(samples, spec.param),
        _ => {
            let weighted: Vec<WeightedSample> = samples.iter().map(RawSample::weighted).collect();
            evaluate_weighted(spec, &weighted)
        }
    }
}

/// Applies the estimator to samples that carry only the importance weight.
///
/// The propensity-smoothing families need the raw probabilities and are
/// rejected here; use [`evaluate`] for those.
pub fn evaluate_weighted(
    spec: &EstimatorSpec,
    samples: &[WeightedSample],
) -> Result<f64, EstimatorError> {
    match spec.kind {
        EstimatorKind::Ips => estimate_ips(samples),
        EstimatorKind::IpsTr => estimate_ips_tr(samples, spec.param),
        EstimatorKind::Snips => estimate_snips(samples),
        EstimatorKind::Pm => estimate_pm(samples, spec.param, spec.pm_exponent()),
        EstimatorKind::Os => estimate_os(samples, spec.param),
        EstimatorKind::Ls => estimate_ls(samples, spec.param),
        EstimatorKind::Lse => {
            let z: Vec<f64> = samples.iter().map(|s| s.weighted_reward).collect();
            lse_of_values(&z, spec.param)
        }
        EstimatorKind::Es | EstimatorKind::Ix | EstimatorKind::LsLin => {
            Err(EstimatorError::InvalidParameter(format!(
                "{} needs raw target/logging probabilities, not just weights",
                spec.kind.name()
            )))
        }
    }
}

fn per_sample_term(spec: &EstimatorSpec, s: &RawSample) -> Result<f64, EstimatorError> {
    match spec.kind {
        EstimatorKind::Ips => Ok(s.weighted().weighted_reward),
        EstimatorKind::IpsTr => Ok(ips_tr_term(&s.weighted(), spec.param)),
        EstimatorKind::Pm => pm_term(&s.weighted(), spec.param, spec.pm_exponent()),
        EstimatorKind::Es => Ok(es_term(s, spec.param)),
        EstimatorKind::Ix => Ok(ix_term(s, spec.param)),
        EstimatorKind::Os => Ok(os_term(&s.weighted(), spec.param)),
        EstimatorKind::Ls => Ok(ls_term(&s.weighted(), spec.param)),
        EstimatorKind::LsLin => Ok(ls_lin_term(s, spec.param)),
        EstimatorKind::Snips | EstimatorKind::Lse => unreachable!("non-separable kind"),
    }
}

/// Scores a logged dataset against a target policy with the chosen estimator.
///
/// Importance weights are formed with the propensity floor applied to the
/// logged propensities. For separable estimators the per-sample transform
/// values are returned alongside the estimate (their mean); the
/// self-normalized and LSE estimators aggregate jointly, so no per-sample
/// decomposition is reported for them.
pub fn run_estimator(
    spec: &EstimatorSpec,
    dataset: &LbfDataset,
    target: &dyn Policy,
    propensity_floor: f64,
) -> Result<EstimateResult, EstimatorError> {
    let raw = compute_raw_samples(dataset, target, propensity_floor)
        .map_err(|e| EstimatorError::InvalidParameter(e.to_string()))?;
    let value = evaluate(spec, &raw)?;
    let per_sample_terms = if spec.kind.is_separable() {
        let mut terms = Vec::with_capacity(raw.len());
        for s in &raw {
            terms.push(per_sample_term(spec, s)?);
        }
        Some(terms)
    } else {
        None
    };
    Ok(EstimateResult { value, per_sample_terms })
}
