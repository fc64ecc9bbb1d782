//! Value estimators for logged bandit feedback.
//!
//! Every estimator maps importance-weighted observations to a scalar estimate
//! of a target policy's expected reward. The separable baselines average a
//! per-sample transform g(rᵢ, wᵢ); the self-normalized estimator and the
//! log-sum-exponential (LSE) estimator aggregate non-separably. The LSE
//! additionally exposes its analytic structure — softmax gradient weights,
//! limits, and two equivalent shrinkage/regularization identities — used by
//! training code and by property tests.

mod dispatch;
mod error;
mod lse;
mod separable;
mod spec;

pub use dispatch::{evaluate, evaluate_weighted, run_estimator};
pub use error::EstimatorError;
pub use lse::{
    estimate_lse, kl_regularized_objective, lse_gradient_weights, lse_kl_regularized_value,
    lse_limits, lse_of_values, lse_shrinkage_gap, LseLimits,
};
pub use separable::{
    estimate_es, estimate_ips, estimate_ips_tr, estimate_ix, estimate_ls, estimate_ls_lin,
    estimate_os, estimate_pm, estimate_snips,
};
pub use spec::{EstimateResult, EstimatorKind, EstimatorSpec, PM_DEFAULT_S};
