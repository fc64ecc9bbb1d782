//! Hyperparameter selection for the LSE estimator, plus generic grid search.
//!
//! Three closed-form/ numeric rules pick the LSE tilt magnitude:
//! a data-driven value from the empirical (1+ε)-moment of the weighted
//! rewards, a sample-size-only adaptive value n^(−1/(1+ε)), and a
//! noisy-reward value minimizing a bias/robustness trade-off that involves a
//! total-variation budget. A generic grid search serves every estimator
//! family.

mod closed_form;
mod config;
mod error;
mod grid;
mod moments;
mod noisy;

pub use closed_form::{
    f_of_epsilon, lambda_adaptive, lambda_data_driven, lambda_data_driven_from_moments,
    DataDrivenLambda,
};
pub use config::{LambdaSelectConfig, DEFAULT_DELTA, DEFAULT_TV_ESTIMATE};
pub use error::SelectError;
pub use grid::grid_search;
pub use moments::empirical_nu;
pub use noisy::{lambda_noisy_reward, NoisyRewardLambda, NOISY_BRACKET_MAX, NOISY_BRACKET_MIN};
