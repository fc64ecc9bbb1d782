//! Core data model for logged bandit feedback (LBF).
//!
//! An LBF dataset holds one record per logged interaction: the context
//! features, the action taken, the probability the logging policy assigned to
//! that action (the propensity), and the observed reward. Everything else in
//! the workspace — value estimators, synthetic benchmarks, policy training —
//! consumes these types.
//!
//! All randomness flows through [`RngHandle`], a thin wrapper over a seeded
//! ChaCha12 stream, so every run is reproducible bit-for-bit from a single
//! 64-bit seed.

mod bandit;
mod data;
mod error;
mod io;
mod policy;
mod rng;

pub use bandit::supervised_to_bandit;
pub use data::{
    compute_raw_samples, compute_weighted_samples, LbfDataset, LbfRecord, RawSample,
    WeightedSample,
};
pub use error::CoreError;
pub use io::{load_lbf_csv, save_lbf_csv};
pub use policy::{LinearSoftmaxPolicy, Policy};
pub use rng::RngHandle;

/// Default lower clamp applied to logged propensities before weights are
/// formed. Zero disables flooring.
pub const DEFAULT_PROPENSITY_FLOOR: f64 = 1e-3;
