use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

/// Counterfactual estimation and learning on logged bandit feedback.
///
/// Every command reads defaults, then the `--config` file's matching
/// section, then command-line flags — later layers override earlier ones.
/// Numeric output is bit-reproducible for a fixed `--seed`.
#[derive(Debug, Parser)]
#[command(name = "lbf", version, about)]
pub struct Cli {
    /// Config file with flat `key = value` sections per command.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Master seed for all randomness.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Also write the stdout table/JSON to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Output format: csv (6 significant digits) or json (full precision).
    #[arg(long, global = true)]
    pub format: Option<String>,

    /// Worker threads; defaults to available parallelism, 1 forces serial.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate a heavy-tailed mean: plain Monte-Carlo vs the tilted
    /// (log-sum-exponential) mean across sample sizes.
    MeanEstimate(MeanEstimateArgs),
    /// Monte-Carlo off-policy evaluation benchmark on a synthetic scenario.
    Ope(OpeArgs),
    /// Train softmax policies on logged bandit data and report accuracy.
    Opl(OplArgs),
    /// Tilt-magnitude selection rules on a dataset or from raw inputs.
    Lambda(LambdaArgs),
}

#[derive(Debug, Args, Default)]
pub struct MeanEstimateArgs {
    /// Pareto scale (minimum value) of the sampled distribution.
    #[arg(long)]
    pub scale: Option<f64>,
    /// Pareto shape; must exceed 1 for the mean to exist.
    #[arg(long)]
    pub shape: Option<f64>,
    /// Tilt magnitude of the log-sum-exponential column.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Monte-Carlo repetitions per sample size.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Comma-separated sample sizes.
    #[arg(long)]
    pub ns: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct OpeArgs {
    /// Scenario: gaussian | lomax | heavy-gev | heavy-student-t |
    /// heavy-frechet | heavy-lomax | pareto-mean.
    #[arg(long)]
    pub scenario: Option<String>,
    /// Comma-separated estimator labels (e.g. "ips,snips,lse(0.1)");
    /// defaults to the full hyperparameter grid.
    #[arg(long)]
    pub estimators: Option<String>,
    /// Logged-dataset size per trial.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of Monte-Carlo trials.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Reward noise: none | gaussian(sigma) | pareto(shape).
    #[arg(long)]
    pub noise: Option<String>,
    /// Write per-trial estimates (full precision) to this CSV file.
    #[arg(long, value_name = "PATH")]
    pub dump_estimates: Option<PathBuf>,
    /// Gaussian scenario: target-component mean.
    #[arg(long)]
    pub mu_target: Option<f64>,
    /// Gaussian scenario: logging-component mean.
    #[arg(long)]
    pub mu_logging: Option<f64>,
    /// Gaussian scenario: common variance.
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// Gaussian scenario: reward growth rate.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Lomax/heavy-tail scenarios: target tail shape.
    #[arg(long)]
    pub shape_target: Option<f64>,
    /// Lomax/heavy-tail scenarios: logging tail shape.
    #[arg(long)]
    pub shape_logging: Option<f64>,
    /// Lomax scenario: reward exponent.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Heavy-tail scenarios: the reward family's own shape parameter.
    #[arg(long)]
    pub family_shape: Option<f64>,
    /// Heavy-tail scenarios: Monte-Carlo draws for the ground-truth value.
    #[arg(long)]
    pub truth_draws: Option<usize>,
    /// Pareto-mean scenario: scale (minimum value).
    #[arg(long)]
    pub scale: Option<f64>,
    /// Pareto-mean scenario: tail shape.
    #[arg(long)]
    pub shape: Option<f64>,
}

#[derive(Debug, Args, Default)]
pub struct OplArgs {
    /// Data source: blobs (synthetic benchmark) | csv (labeled files).
    #[arg(long)]
    pub source: Option<String>,
    /// csv source: training set (feature columns, label column last).
    #[arg(long, value_name = "PATH")]
    pub data: Option<PathBuf>,
    /// csv source: validation set for early stopping.
    #[arg(long, value_name = "PATH")]
    pub valid_data: Option<PathBuf>,
    /// csv source: held-out test set for the reported accuracy.
    #[arg(long, value_name = "PATH")]
    pub test_data: Option<PathBuf>,
    /// Comma-separated objective labels; `lse(auto)` picks the tilt
    /// magnitude by the data-driven rule on the converted log.
    #[arg(long)]
    pub objectives: Option<String>,
    /// Comma-separated training seeds.
    #[arg(long)]
    pub seeds: Option<String>,
    /// Learning rate of the gradient-ascent trainer.
    #[arg(long)]
    pub lr: Option<f64>,
    /// Mini-batch size.
    #[arg(long)]
    pub batch_size: Option<usize>,
    /// Maximum training epochs.
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Early-stop patience in epochs without validation improvement.
    #[arg(long)]
    pub patience: Option<usize>,
    /// Propensity-noise shape b; smaller is noisier. Omit for clean runs.
    #[arg(long)]
    pub noise_b: Option<f64>,
    /// Probability of flipping each binary reward. Omit for clean runs.
    #[arg(long)]
    pub flip_pf: Option<f64>,
    /// Fraction of the training set used to fit the logging policy.
    #[arg(long)]
    pub logging_fraction: Option<f64>,
    /// Inverse temperature the logging policy is served at.
    #[arg(long)]
    pub logging_tau: Option<f64>,
    /// Epochs of the logging-policy classifier fit.
    #[arg(long)]
    pub logging_epochs: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct LambdaArgs {
    /// Sample count (alternative to --data).
    #[arg(long)]
    pub n: Option<usize>,
    /// Empirical (1+epsilon)-moment of the weighted rewards.
    #[arg(long)]
    pub nu_hat: Option<f64>,
    /// Corrupted-moment level for the noisy-reward rule; defaults to nu-hat.
    #[arg(long)]
    pub nu_tilde: Option<f64>,
    /// Heavy-tail order in [0, 1].
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Confidence level of the data-driven rule, in (0, 1).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Total-variation budget of the noisy-reward rule.
    #[arg(long)]
    pub tv: Option<f64>,
    /// Propensity floor applied when weighting the dataset.
    #[arg(long)]
    pub floor: Option<f64>,
    /// Logged-bandit CSV to compute the moment from (needs --policy).
    #[arg(long, value_name = "PATH")]
    pub data: Option<PathBuf>,
    /// Target-policy checkpoint used to weight --data.
    #[arg(long, value_name = "PATH")]
    pub policy: Option<PathBuf>,
}
