use crate::cli_args::OpeArgs;
use crate::config_file::{resolve, resolve_opt, FileConfig};
use crate::error::CliError;
use crate::format::sig6;
use crate::spec_parse::{default_grid, parse_estimator_list};
use estimators::{EstimatorKind, EstimatorSpec};
use serde::Serialize;
use std::path::PathBuf;
use synthetic_ope::{
    run_ope_experiment, GaussianScenario, HeavyTailFamily, HeavyTailScenario, LomaxScenario,
    OpeResult, ParetoMeanScenario, RewardNoiseSpec, Scenario,
};

const SECTION: &str = "ope";

#[derive(Debug)]
pub struct OpeSettings {
    pub scenario: Scenario,
    pub specs: Vec<EstimatorSpec>,
    pub n: usize,
    pub trials: usize,
    pub noise: RewardNoiseSpec,
    pub dump_estimates: Option<PathBuf>,
}

/// Scenario parameters that were set but belong to a different scenario are
/// configuration mistakes, not silently ignored noise.
fn reject_unused(
    scenario: &str,
    unused: &[(&str, bool)],
) -> Result<(), CliError> {
    for (key, set) in unused {
        if *set {
            return Err(CliError::config(format!(
                "`{key}` does not apply to the {scenario} scenario"
            )));
        }
    }
    Ok(())
}

fn parse_noise(text: &str) -> Result<RewardNoiseSpec, CliError> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("none") {
        return Ok(RewardNoiseSpec::None);
    }
    let parse_inner = |label: &str| -> Result<f64, CliError> {
        let inner = text[label.len()..]
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| {
                CliError::config(format!(
                    "noise `{text}`: expected {label}(value)"
                ))
            })?;
        inner
            .trim()
            .parse()
            .map_err(|e| CliError::config(format!("noise `{text}`: bad value: {e}")))
    };
    if text.starts_with("gaussian") {
        return RewardNoiseSpec::positive_gaussian(parse_inner("gaussian")?)
            .map_err(CliError::config);
    }
    if text.starts_with("pareto") {
        return RewardNoiseSpec::pareto(parse_inner("pareto")?).map_err(CliError::config);
    }
    Err(CliError::config(format!(
        "unknown noise `{text}`; expected none, gaussian(sigma), or pareto(shape)"
    )))
}

impl OpeSettings {
    pub fn resolve(file: Option<&FileConfig>, args: &OpeArgs) -> Result<Self, CliError> {
        let scenario_name: String =
            resolve(args.scenario.clone(), file, SECTION, "scenario", "gaussian".into())?;
        let scenario_name = scenario_name.trim().to_ascii_lowercase();

        let mu_target = resolve_opt(args.mu_target, file, SECTION, "mu-target")?;
        let mu_logging = resolve_opt(args.mu_logging, file, SECTION, "mu-logging")?;
        let sigma2 = resolve_opt(args.sigma2, file, SECTION, "sigma2")?;
        let alpha = resolve_opt(args.alpha, file, SECTION, "alpha")?;
        let shape_target = resolve_opt(args.shape_target, file, SECTION, "shape-target")?;
        let shape_logging = resolve_opt(args.shape_logging, file, SECTION, "shape-logging")?;
        let beta = resolve_opt(args.beta, file, SECTION, "beta")?;
        let family_shape = resolve_opt(args.family_shape, file, SECTION, "family-shape")?;
        let truth_draws: Option<usize> =
            resolve_opt(args.truth_draws, file, SECTION, "truth-draws")?;
        let scale = resolve_opt(args.scale, file, SECTION, "scale")?;
        let shape = resolve_opt(args.shape, file, SECTION, "shape")?;

        let gaussian_keys = [
            ("mu-target", mu_target.is_some()),
            ("mu-logging", mu_logging.is_some()),
            ("sigma2", sigma2.is_some()),
            ("alpha", alpha.is_some()),
        ];
        let tail_pair_keys = [
            ("shape-target", shape_target.is_some()),
            ("shape-logging", shape_logging.is_some()),
        ];
        let lomax_keys = [("beta", beta.is_some())];
        let heavy_keys = [
            ("family-shape", family_shape.is_some()),
            ("truth-draws", truth_draws.is_some()),
        ];
        let pareto_keys = [("scale", scale.is_some()), ("shape", shape.is_some())];

        let scenario = match scenario_name.as_str() {
            "gaussian" => {
                reject_unused("gaussian", &tail_pair_keys)?;
                reject_unused("gaussian", &lomax_keys)?;
                reject_unused("gaussian", &heavy_keys)?;
                reject_unused("gaussian", &pareto_keys)?;
                Scenario::Gaussian(
                    GaussianScenario::new(
                        mu_target.unwrap_or(0.5),
                        mu_logging.unwrap_or(1.0),
                        sigma2.unwrap_or(0.25),
                        alpha.unwrap_or(1.1),
                    )
                    .map_err(CliError::config)?,
                )
            }
            "lomax" => {
                reject_unused("lomax", &gaussian_keys)?;
                reject_unused("lomax", &heavy_keys)?;
                reject_unused("lomax", &pareto_keys)?;
                Scenario::Lomax(
                    LomaxScenario::new(
                        shape_target.unwrap_or(2.5),
                        shape_logging.unwrap_or(1.5),
                        beta.unwrap_or(2.0),
                    )
                    .map_err(CliError::config)?,
                )
            }
            name if name.starts_with("heavy-") => {
                reject_unused(&scenario_name, &gaussian_keys)?;
                reject_unused(&scenario_name, &lomax_keys)?;
                reject_unused(&scenario_name, &pareto_keys)?;
                let family = match &name["heavy-".len()..] {
                    "gev" => HeavyTailFamily::Gev { shape: family_shape.unwrap_or(0.9) },
                    "student-t" => {
                        HeavyTailFamily::StudentT { dof: family_shape.unwrap_or(1.2) }
                    }
                    "frechet" => {
                        HeavyTailFamily::Frechet { shape: family_shape.unwrap_or(1.2) }
                    }
                    "lomax" => HeavyTailFamily::Lomax { shape: family_shape.unwrap_or(1.2) },
                    other => {
                        return Err(CliError::config(format!(
                            "unknown heavy-tail family `{other}`; expected gev, student-t, frechet, or lomax"
                        )))
                    }
                };
                Scenario::HeavyTail(
                    HeavyTailScenario::with_truth_budget(
                        family,
                        shape_target.unwrap_or(HeavyTailScenario::DEFAULT_SHAPE_TARGET),
                        shape_logging.unwrap_or(HeavyTailScenario::DEFAULT_SHAPE_LOGGING),
                        truth_draws.unwrap_or(synthetic_ope::DEFAULT_TRUTH_DRAWS),
                    )
                    .map_err(CliError::config)?,
                )
            }
            "pareto-mean" => {
                reject_unused("pareto-mean", &gaussian_keys)?;
                reject_unused("pareto-mean", &tail_pair_keys)?;
                reject_unused("pareto-mean", &lomax_keys)?;
                reject_unused("pareto-mean", &heavy_keys)?;
                Scenario::ParetoMean(
                    ParetoMeanScenario::new(scale.unwrap_or(1.0 / 3.0), shape.unwrap_or(1.5))
                        .map_err(CliError::config)?,
                )
            }
            other => {
                return Err(CliError::config(format!(
                    "unknown scenario `{other}`; expected gaussian, lomax, heavy-gev, heavy-student-t, heavy-frechet, heavy-lomax, or pareto-mean"
                )))
            }
        };

        let specs = match resolve_opt(args.estimators.clone(), file, SECTION, "estimators")? {
            Some(text) => parse_estimator_list(&text)?,
            None => default_grid(),
        };
        let noise_text: String =
            resolve(args.noise.clone(), file, SECTION, "noise", "none".into())?;
        Ok(Self {
            scenario,
            specs,
            n: resolve(args.n, file, SECTION, "n", 1000)?,
            trials: resolve(args.trials, file, SECTION, "trials", 10_000)?,
            noise: parse_noise(&noise_text)?,
            dump_estimates: resolve_opt(
                args.dump_estimates.clone(),
                file,
                SECTION,
                "dump-estimates",
            )?,
        })
    }
}

/// One line of the evaluation table.
#[derive(Debug, Clone, Serialize)]
pub struct OpeRow {
    pub scenario: String,
    pub estimator: String,
    pub param: Option<f64>,
    pub n: usize,
    pub trials: usize,
    pub bias: f64,
    pub variance: f64,
    pub mse: f64,
}

pub fn run_ope(settings: &OpeSettings, seed: u64) -> Result<Vec<OpeRow>, CliError> {
    let results = run_ope_experiment(
        &settings.scenario,
        &settings.specs,
        settings.n,
        settings.trials,
        &settings.noise,
        seed,
    )
    .map_err(CliError::numeric)?;
    if let Some(path) = &settings.dump_estimates {
        std::fs::write(path, estimates_csv(&results)).map_err(|e| {
            CliError::numeric(format!("cannot write {}: {e}", path.display()))
        })?;
    }
    let scenario_name = settings.scenario.name();
    Ok(results
        .into_iter()
        .map(|r| OpeRow {
            scenario: scenario_name.clone(),
            estimator: r.spec.kind.name().to_string(),
            param: match r.spec.kind {
                EstimatorKind::Ips | EstimatorKind::Snips => None,
                _ => Some(r.spec.param),
            },
            n: settings.n,
            trials: settings.trials,
            bias: r.stats.bias,
            variance: r.stats.variance,
            mse: r.stats.mse,
        })
        .collect())
}

pub fn to_csv(rows: &[OpeRow]) -> String {
    let mut out = String::from("scenario,estimator,param,n,trials,bias,variance,mse\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.scenario,
            r.estimator,
            r.param.map(|p| p.to_string()).unwrap_or_default(),
            r.n,
            r.trials,
            sig6(r.bias),
            sig6(r.variance),
            sig6(r.mse)
        ));
    }
    out
}

/// Per-trial estimates, one column per estimator, full precision.
fn estimates_csv(results: &[OpeResult]) -> String {
    let mut out = String::from("trial");
    for r in results {
        out.push(',');
        out.push_str(&r.spec.label());
    }
    out.push('\n');
    let trials = results.first().map(|r| r.estimates.len()).unwrap_or(0);
    for t in 0..trials {
        out.push_str(&t.to_string());
        for r in results {
            out.push(',');
            out.push_str(&r.estimates[t].to_string());
        }
        out.push('\n');
    }
    out
}
