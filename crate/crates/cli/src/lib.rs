//! Command-line front door for the logged-bandit-feedback toolkit.
//!
//! Four commands, each mirroring one experiment driver:
//!
//! - `mean-estimate` — heavy-tailed mean estimation, plain Monte-Carlo vs
//!   the tilted mean, across sample sizes.
//! - `ope` — the Monte-Carlo off-policy evaluation benchmark on a synthetic
//!   scenario with any estimator list.
//! - `opl` — off-policy learning on the synthetic benchmark or labeled CSV
//!   files, reporting deterministic accuracies per seed.
//! - `lambda` — the tilt-magnitude selection rules with inputs echoed.
//!
//! Settings resolve in three layers: built-in defaults, then the
//! `--config` file's section for the command, then command-line flags.
//! Unknown config keys are rejected. For a fixed `--seed`, numeric output
//! is bit-reproducible regardless of thread count.

mod cli_args;
mod commands;
mod config_file;
mod error;
mod format;
mod spec_parse;

pub use cli_args::{Cli, Command, LambdaArgs, MeanEstimateArgs, OpeArgs, OplArgs};
pub use commands::lambda::{
    inputs_echo, run_lambda, LambdaInputs, LambdaReport, LambdaRow, LambdaSettings,
};
pub use commands::mean_estimate::{run_mean_estimate, MeanEstimateSettings, MeanRow};
pub use commands::ope::{run_ope, OpeRow, OpeSettings};
pub use commands::opl::{
    load_opl_data, run_opl, run_opl_single, ObjectiveSetting, OplData, OplGroup, OplRunReport,
    OplSettings, OplSource, BANDIT_CONVERT_STREAM, LOGGING_FIT_STREAM,
};
pub use config_file::{load_config_file, parse_config_text, FileConfig};
pub use error::CliError;
pub use format::{emit, sig6, OutputFormat};
pub use spec_parse::{default_grid, parse_estimator_list, parse_estimator_spec};

use config_file::resolve;
use std::path::PathBuf;

/// Global settings shared by every command.
#[derive(Debug)]
pub struct GlobalSettings {
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub threads: Option<usize>,
}

impl GlobalSettings {
    pub fn resolve(file: Option<&FileConfig>, cli: &Cli) -> Result<Self, CliError> {
        let format_text: String =
            resolve(cli.format.clone(), file, "global", "format", "csv".into())?;
        Ok(Self {
            seed: resolve(cli.seed, file, "global", "seed", 0)?,
            out: config_file::resolve_opt(cli.out.clone(), file, "global", "out")?,
            format: format_text.parse()?,
            threads: config_file::resolve_opt(cli.threads, file, "global", "threads")?,
        })
    }
}

/// Sizes the global worker pool. Calling more than once (as in-process
/// tests do) keeps the first pool; the experiment results do not depend on
/// thread count, only wall time does.
fn init_threads(threads: Option<usize>) {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let _ = builder.build_global();
}

/// Splits a comma-separated list into parsed items, naming the list on
/// failure.
pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    let items: Vec<T> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|e| CliError::config(format!("{what}: bad entry `{s}`: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(CliError::config(format!("{what}: list is empty")));
    }
    Ok(items)
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::numeric(format!("cannot serialize output: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Runs one parsed invocation end to end and prints its output.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => Some(load_config_file(path)?),
        None => None,
    };
    let globals = GlobalSettings::resolve(file.as_ref(), &cli)?;
    init_threads(globals.threads);
    let text = match &cli.command {
        Command::MeanEstimate(args) => {
            let settings = MeanEstimateSettings::resolve(file.as_ref(), args)?;
            let rows = run_mean_estimate(&settings, globals.seed)?;
            match globals.format {
                OutputFormat::Csv => commands::mean_estimate::to_csv(&rows),
                OutputFormat::Json => to_json(&rows)?,
            }
        }
        Command::Ope(args) => {
            let settings = OpeSettings::resolve(file.as_ref(), args)?;
            let rows = run_ope(&settings, globals.seed)?;
            match globals.format {
                OutputFormat::Csv => commands::ope::to_csv(&rows),
                OutputFormat::Json => to_json(&rows)?,
            }
        }
        Command::Opl(args) => {
            let settings = OplSettings::resolve(file.as_ref(), args)?;
            let groups = run_opl(&settings)?;
            match globals.format {
                OutputFormat::Csv => commands::opl::to_csv(&groups),
                OutputFormat::Json => to_json(&groups)?,
            }
        }
        Command::Lambda(args) => {
            let settings = LambdaSettings::resolve(file.as_ref(), args)?;
            let rows = run_lambda(&settings)?;
            eprint!("{}", inputs_echo(&settings.inputs));
            match globals.format {
                OutputFormat::Csv => commands::lambda::to_csv(&rows),
                OutputFormat::Json => {
                    to_json(&LambdaReport { inputs: &settings.inputs, rules: &rows })?
                }
            }
        }
    };
    emit(&text, globals.out.as_deref())
}
