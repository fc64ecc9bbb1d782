//! Off-policy learning for logged bandit feedback.
//!
//! This crate trains linear softmax policies by stochastic gradient ascent on
//! counterfactual value objectives. Every objective supported by the
//! `estimators` crate has a matching analytic gradient here, so the same
//! configuration can be evaluated offline and optimized directly.
//!
//! The pieces:
//!
//! - [`train_policy`] — the trainer: mini-batch gradient ascent with
//!   early stopping on deterministic validation accuracy.
//! - [`lse_objective_gradient`] / [`baseline_objective_gradient`] — analytic
//!   gradients of the soft-minimum objective and of the importance-weighted
//!   baselines.
//! - [`fit_reward_model`] plus [`dm_value`] / [`dr_value`] / [`dr_lse_value`]
//!   — ridge regression reward models and the model-based value estimates
//!   built on them.
//! - [`benchmark_blobs`] / [`gaussian_blobs`] — synthetic classification
//!   tasks used to exercise the full learning loop end to end.
//! - [`inject_propensity_noise`] / [`inject_reward_flip`] — controlled
//!   corruption of logged data for robustness experiments.
//! - [`policy_to_checkpoint`] / [`policy_from_checkpoint`] — plain-text
//!   round-trippable policy serialization.

mod blobs;
mod config;
mod error;
mod gradient;
mod labeled;
mod model_values;
mod noise_inject;
mod reward_model;
mod train;

pub use blobs::{
    benchmark_blobs, gaussian_blobs, BenchmarkData, BENCHMARK_CLASS_COUNT,
    BENCHMARK_FEATURE_DIM, BENCHMARK_NUISANCE_VARIANCE, BENCHMARK_SEPARATION,
    BENCHMARK_STRUCTURE_SEED, BENCHMARK_TEST, BENCHMARK_TRAIN, BENCHMARK_VALID,
};
pub use config::OplConfig;
pub use error::OplError;
pub use gradient::{
    baseline_objective_gradient, lse_objective_gradient, objective_value,
};
pub use labeled::{deterministic_accuracy, LabeledSet};
pub use model_values::{dm_value, dr_lse_value, dr_value};
pub use noise_inject::{inject_propensity_noise, inject_reward_flip};
pub use reward_model::{fit_reward_model, RewardModel};
pub use train::{
    fit_softmax_classifier, policy_from_checkpoint, policy_to_checkpoint,
    train_policy, EpochRow, TrainOutcome, TrainingLog,
};
