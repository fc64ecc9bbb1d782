//! Monte-Carlo benchmark harness for off-policy value estimators on
//! synthetic logged-bandit scenarios with known (or high-precision
//! Monte-Carlo) ground truth.
//!
//! A [`Scenario`] draws logged datasets; [`run_ope_experiment`] repeats that
//! draw over many trials with common random numbers and reports each
//! estimator's bias, variance, and mean squared error against the true
//! target value via [`TrialStats`]. Optional additive [`RewardNoiseSpec`]
//! corrupts rewards while statistics stay anchored to the clean truth.

mod emit;
mod error;
mod noise;
mod runner;
mod scenario;
mod stats;

pub use emit::results_to_csv;
pub use error::OpeError;
pub use noise::RewardNoiseSpec;
pub use runner::{run_ope_experiment, OpeResult};
pub use scenario::{
    GaussianScenario, HeavyTailFamily, HeavyTailScenario, LomaxScenario, ParetoMeanScenario,
    Scenario, DEFAULT_TRUTH_DRAWS, HEAVY_TAIL_TRUTH_SEED,
};
pub use stats::TrialStats;
