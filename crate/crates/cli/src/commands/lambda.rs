use crate::cli_args::LambdaArgs;
use crate::config_file::{resolve, resolve_opt, FileConfig};
use crate::error::CliError;
use crate::format::sig6_opt;
use lambda_select::{
    empirical_nu, lambda_adaptive, lambda_data_driven_from_moments, lambda_noisy_reward,
    LambdaSelectConfig, DEFAULT_DELTA, DEFAULT_TV_ESTIMATE,
};
use lbf_core::{compute_weighted_samples, load_lbf_csv, DEFAULT_PROPENSITY_FLOOR};
use opl::policy_from_checkpoint;
use serde::Serialize;

const SECTION: &str = "lambda";

/// Inputs the selection rules run on, echoed with the report.
#[derive(Debug, Clone, Serialize)]
pub struct LambdaInputs {
    pub n: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub tv: f64,
    pub nu_hat: Option<f64>,
    pub nu_tilde: Option<f64>,
    /// Where the moment estimate came from: "data", "flag", or "none".
    pub nu_hat_source: String,
}

#[derive(Debug)]
pub struct LambdaSettings {
    pub inputs: LambdaInputs,
}

impl LambdaSettings {
    pub fn resolve(file: Option<&FileConfig>, args: &LambdaArgs) -> Result<Self, CliError> {
        let epsilon = resolve(args.epsilon, file, SECTION, "epsilon", 1.0)?;
        let delta = resolve(args.delta, file, SECTION, "delta", DEFAULT_DELTA)?;
        let tv = resolve(args.tv, file, SECTION, "tv", DEFAULT_TV_ESTIMATE)?;
        let floor = resolve(args.floor, file, SECTION, "floor", DEFAULT_PROPENSITY_FLOOR)?;
        let n_flag: Option<usize> = resolve_opt(args.n, file, SECTION, "n")?;
        let nu_hat_flag: Option<f64> = resolve_opt(args.nu_hat, file, SECTION, "nu-hat")?;
        let nu_tilde: Option<f64> = resolve_opt(args.nu_tilde, file, SECTION, "nu-tilde")?;
        let data: Option<std::path::PathBuf> =
            resolve_opt(args.data.clone(), file, SECTION, "data")?;
        let policy_path: Option<std::path::PathBuf> =
            resolve_opt(args.policy.clone(), file, SECTION, "policy")?;

        if !(0.0..=1.0).contains(&epsilon) {
            return Err(CliError::config(format!(
                "epsilon must lie in [0, 1], got {epsilon}"
            )));
        }
        if let Some(nu) = nu_hat_flag {
            if !(nu > 0.0 && nu.is_finite()) {
                return Err(CliError::config(format!(
                    "nu-hat must be positive and finite, got {nu}"
                )));
            }
        }
        if let Some(nu) = nu_tilde {
            if !(nu > 0.0 && nu.is_finite()) {
                return Err(CliError::config(format!(
                    "nu-tilde must be positive and finite, got {nu}"
                )));
            }
        }

        let (n, nu_hat, source) = match data {
            Some(path) => {
                if n_flag.is_some() {
                    return Err(CliError::config(
                        "`n` conflicts with `data`: the sample count comes from the dataset",
                    ));
                }
                if nu_hat_flag.is_some() {
                    return Err(CliError::config(
                        "`nu-hat` conflicts with `data`: the moment is computed from the dataset",
                    ));
                }
                let policy_path = policy_path.ok_or_else(|| {
                    CliError::config("`data` needs `policy` (a target-policy checkpoint) to weight the log")
                })?;
                let dataset = load_lbf_csv(&path).map_err(CliError::config)?;
                let checkpoint = std::fs::read_to_string(&policy_path).map_err(|e| {
                    CliError::config(format!("cannot read {}: {e}", policy_path.display()))
                })?;
                let policy = policy_from_checkpoint(&checkpoint).map_err(CliError::config)?;
                let samples = compute_weighted_samples(&dataset, &policy, floor)
                    .map_err(CliError::config)?;
                let nu = empirical_nu(&samples, epsilon).map_err(CliError::numeric)?;
                (dataset.len(), Some(nu), "data".to_string())
            }
            None => {
                if policy_path.is_some() {
                    return Err(CliError::config("`policy` needs `data`"));
                }
                let n = n_flag.ok_or_else(|| {
                    CliError::config("provide either `data` (with `policy`) or `n`")
                })?;
                let source = if nu_hat_flag.is_some() { "flag" } else { "none" };
                (n, nu_hat_flag, source.to_string())
            }
        };
        if n == 0 {
            return Err(CliError::config("n must be at least 1"));
        }

        Ok(Self {
            inputs: LambdaInputs {
                n,
                epsilon,
                delta,
                tv,
                nu_hat,
                nu_tilde,
                nu_hat_source: source,
            },
        })
    }
}

/// One rule's outcome. `magnitude` is empty when the rule cannot run on the
/// given inputs; `note` says why, or flags a boundary condition.
#[derive(Debug, Clone, Serialize)]
pub struct LambdaRow {
    pub rule: String,
    pub magnitude: Option<f64>,
    pub objective: Option<f64>,
    pub note: String,
}

pub fn run_lambda(settings: &LambdaSettings) -> Result<Vec<LambdaRow>, CliError> {
    let inp = &settings.inputs;
    let mut rows = Vec::new();

    let adaptive = lambda_adaptive(inp.n, inp.epsilon).map_err(CliError::numeric)?;
    rows.push(LambdaRow {
        rule: "adaptive".into(),
        magnitude: Some(adaptive),
        objective: None,
        note: String::new(),
    });

    let grid_suggestion = || {
        let grid = LambdaSelectConfig::default().grid;
        format!(
            "tune by grid search over {{{}}}",
            grid.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
        )
    };
    let data_driven = if inp.epsilon == 0.0 {
        LambdaRow {
            rule: "data-driven".into(),
            magnitude: None,
            objective: None,
            note: format!(
                "no closed form at heavy-tail order 0; {}",
                grid_suggestion()
            ),
        }
    } else {
        match inp.nu_hat {
            None => LambdaRow {
                rule: "data-driven".into(),
                magnitude: None,
                objective: None,
                note: "needs a moment estimate: pass nu-hat or data+policy".into(),
            },
            Some(nu) => {
                let dd = lambda_data_driven_from_moments(nu, inp.n, inp.epsilon, inp.delta)
                    .map_err(CliError::numeric)?;
                LambdaRow {
                    rule: "data-driven".into(),
                    magnitude: Some(dd.magnitude),
                    objective: None,
                    note: if dd.clamped { "clamped to 1".into() } else { String::new() },
                }
            }
        }
    };
    rows.push(data_driven);

    let noisy = match (inp.nu_tilde.or(inp.nu_hat), inp.epsilon) {
        (_, e) if e == 0.0 => LambdaRow {
            rule: "noisy".into(),
            magnitude: None,
            objective: None,
            note: format!("no closed form at heavy-tail order 0; {}", grid_suggestion()),
        },
        (None, _) => LambdaRow {
            rule: "noisy".into(),
            magnitude: None,
            objective: None,
            note: "needs a moment estimate: pass nu-tilde, nu-hat, or data+policy".into(),
        },
        (Some(nu_tilde), _) => {
            let cfg = LambdaSelectConfig::new(
                inp.epsilon,
                inp.delta,
                inp.tv,
                LambdaSelectConfig::default().grid,
            )
            .map_err(CliError::config)?;
            let result = lambda_noisy_reward(&cfg, nu_tilde).map_err(CliError::numeric)?;
            LambdaRow {
                rule: "noisy".into(),
                magnitude: Some(result.magnitude),
                objective: Some(result.objective),
                note: if result.degenerate_toward_zero {
                    "degenerate: zero corruption budget has no interior minimum; smallest bracket point returned".into()
                } else {
                    String::new()
                },
            }
        }
    };
    rows.push(noisy);

    Ok(rows)
}

/// The inputs echo printed to stderr (stdout carries only the table).
pub fn inputs_echo(inputs: &LambdaInputs) -> String {
    format!(
        "inputs: n={} epsilon={} delta={} tv={} nu-hat={} ({}) nu-tilde={}\n",
        inputs.n,
        inputs.epsilon,
        inputs.delta,
        inputs.tv,
        inputs.nu_hat.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
        inputs.nu_hat_source,
        inputs.nu_tilde.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
    )
}

pub fn to_csv(rows: &[LambdaRow]) -> String {
    let mut out = String::from("rule,magnitude,objective,note\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.rule,
            sig6_opt(r.magnitude),
            sig6_opt(r.objective),
            r.note
        ));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct LambdaReport<'a> {
    pub inputs: &'a LambdaInputs,
    pub rules: &'a [LambdaRow],
}
