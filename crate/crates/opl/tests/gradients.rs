//! Analytic objective gradients vs central finite differences.
//!
//! For every supported objective, on at least 20 randomly generated problem
//! instances each, every entry of the analytic policy gradient must agree
//! with a central finite difference of the scalar objective to within 1e-5
//! relative (with an absolute guard of the same size for near-zero entries).

use estimators::EstimatorSpec;
use lbf_core::{LbfRecord, LinearSoftmaxPolicy, RngHandle};
use opl::{baseline_objective_gradient, lse_objective_gradient, objective_value};
use rand::Rng;

const FLOOR: f64 = 1e-3;
const FD_STEP: f64 = 1e-5;
const REL_TOL: f64 = 1e-5;
const INSTANCES: usize = 20;
const ACTIONS: usize = 3;
const FEATURES: usize = 4;
const BATCH: usize = 25;

struct Instance {
    records: Vec<LbfRecord>,
    policy: LinearSoftmaxPolicy,
}

fn random_instance(seed: u64) -> Instance {
    let mut rng = RngHandle::new(seed).rng();
    let records = (0..BATCH)
        .map(|_| {
            let x: Vec<f64> = (0..FEATURES).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a = rng.gen_range(0..ACTIONS);
            let p = rng.gen_range(0.05..1.0);
            let r = rng.gen_range(0.0..2.0);
            LbfRecord::new(x, a, p, r).unwrap()
        })
        .collect();
    let tau = [0.7, 1.0, 1.9][(seed % 3) as usize];
    let weights = (0..ACTIONS)
        .map(|_| (0..FEATURES).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    Instance { records, policy: LinearSoftmaxPolicy::new(weights, tau).unwrap() }
}

fn importance_weights(inst: &Instance) -> Vec<f64> {
    inst.records
        .iter()
        .map(|rec| {
            let probs = inst.policy.probs(&rec.context);
            probs[rec.action] / rec.propensity.max(FLOOR)
        })
        .collect()
}

/// A truncation level strictly between two observed importance weights, as
/// far from both as possible, so no finite-difference step can cross the
/// kink of the truncated objective.
fn kink_free_clip(inst: &Instance) -> f64 {
    let mut ws = importance_weights(inst);
    ws.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (mut best_gap, mut best_mid) = (0.0, ws[ws.len() / 2]);
    for pair in ws.windows(2) {
        let gap = pair[1] - pair[0];
        if gap > best_gap {
            best_gap = gap;
            best_mid = 0.5 * (pair[0] + pair[1]);
        }
    }
    assert!(best_gap > 1e-3, "degenerate weight spread");
    best_mid
}

fn finite_difference(
    inst: &Instance,
    spec: &EstimatorSpec,
    action: usize,
    feature: usize,
) -> f64 {
    let eval = |delta: f64| {
        let mut shifted = inst.policy.clone();
        shifted.weights_mut()[action][feature] += delta;
        objective_value(&inst.records, &shifted, spec, FLOOR).unwrap()
    };
    (eval(FD_STEP) - eval(-FD_STEP)) / (2.0 * FD_STEP)
}

fn check_gradient(inst: &Instance, spec: &EstimatorSpec) {
    let grad = if spec.kind == estimators::EstimatorKind::Lse {
        lse_objective_gradient(&inst.records, &inst.policy, spec.param, FLOOR).unwrap()
    } else {
        baseline_objective_gradient(&inst.records, &inst.policy, spec, FLOOR).unwrap()
    };
    assert_eq!(grad.len(), ACTIONS);
    for (a, row) in grad.iter().enumerate() {
        assert_eq!(row.len(), FEATURES);
        for (f, &g) in row.iter().enumerate() {
            let fd = finite_difference(inst, spec, a, f);
            let tol = REL_TOL * g.abs().max(fd.abs()).max(1.0);
            assert!(
                (g - fd).abs() <= tol,
                "{} entry ({a},{f}): analytic {g} vs fd {fd}",
                spec.label()
            );
        }
    }
}

fn run_suite(seed_base: u64, spec_for: impl Fn(&Instance) -> EstimatorSpec) {
    for i in 0..INSTANCES {
        let inst = random_instance(seed_base + i as u64);
        let spec = spec_for(&inst);
        check_gradient(&inst, &spec);
    }
}

#[test]
fn plain_importance_weighting_matches_finite_differences() {
    run_suite(1_000, |_| EstimatorSpec::ips());
}

#[test]
fn truncated_importance_weighting_matches_finite_differences() {
    // The clip level is placed in the widest gap between observed weights so
    // the objective is smooth in a neighbourhood of the evaluation point.
    run_suite(2_000, |inst| EstimatorSpec::ips_tr(kink_free_clip(inst)));
}

#[test]
fn self_normalized_weighting_matches_finite_differences() {
    run_suite(3_000, |_| EstimatorSpec::snips());
}

#[test]
fn power_mean_weighting_matches_finite_differences() {
    run_suite(4_000, |_| EstimatorSpec::pm(0.35));
}

#[test]
fn power_mean_at_zero_matches_finite_differences() {
    run_suite(5_000, |_| EstimatorSpec::pm(0.0));
}

#[test]
fn exponent_smoothing_matches_finite_differences() {
    run_suite(6_000, |_| EstimatorSpec::es(0.5));
}

#[test]
fn implicit_exploration_matches_finite_differences() {
    run_suite(7_000, |_| EstimatorSpec::ix(0.3));
}

#[test]
fn optimistic_shrinkage_matches_finite_differences() {
    run_suite(8_000, |_| EstimatorSpec::os(1.0));
}

#[test]
fn logarithmic_smoothing_matches_finite_differences() {
    run_suite(9_000, |_| EstimatorSpec::ls(0.4));
}

#[test]
fn linearized_logarithmic_smoothing_matches_finite_differences() {
    run_suite(10_000, |_| EstimatorSpec::ls_lin(0.4));
}

#[test]
fn tilted_aggregate_matches_finite_differences() {
    run_suite(11_000, |_| EstimatorSpec::lse(0.8));
    // A second magnitude exercises a different tilt strength.
    run_suite(12_000, |_| EstimatorSpec::lse(2.5));
}
