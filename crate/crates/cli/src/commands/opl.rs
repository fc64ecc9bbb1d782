use crate::cli_args::OplArgs;
use crate::config_file::{resolve, resolve_opt, FileConfig};
use crate::error::CliError;
use crate::format::{sig6, sig6_opt};
use crate::parse_list;
use estimators::{EstimatorKind, EstimatorSpec};
use lambda_select::{lambda_data_driven, LambdaSelectConfig};
use lbf_core::{
    compute_weighted_samples, supervised_to_bandit, LinearSoftmaxPolicy, RngHandle,
    DEFAULT_PROPENSITY_FLOOR,
};
use opl::{
    benchmark_blobs, deterministic_accuracy, fit_softmax_classifier, train_policy, LabeledSet,
    OplConfig,
};
use serde::Serialize;
use std::path::{Path, PathBuf};

const SECTION: &str = "opl";

/// Derived-stream labels for the pipeline stages that consume randomness
/// before training (training itself derives its own streams from the seed).
pub const LOGGING_FIT_STREAM: u64 = 101;
pub const BANDIT_CONVERT_STREAM: u64 = 102;

/// Fixed hyperparameters of the logging-policy classifier fit. The logging
/// policy is deliberately weak: a short fit on a small slice of the labels,
/// served flattened.
const LOGGING_FIT_LR: f64 = 1e-3;
const LOGGING_FIT_BATCH: usize = 64;

/// An objective to train against: a fixed estimator, or the tilted
/// objective with its magnitude chosen by the data-driven rule on the
/// converted bandit log.
#[derive(Debug, Clone, PartialEq)]
pub enum ObjectiveSetting {
    Fixed(EstimatorSpec),
    LseAuto,
}

impl ObjectiveSetting {
    pub fn label(&self) -> String {
        match self {
            ObjectiveSetting::Fixed(spec) => spec.label(),
            ObjectiveSetting::LseAuto => "lse(auto)".into(),
        }
    }

    fn parse(text: &str) -> Result<Self, CliError> {
        let trimmed = text.trim();
        if trimmed.eq_ignore_ascii_case("lse(auto)") {
            return Ok(ObjectiveSetting::LseAuto);
        }
        if trimmed.to_ascii_lowercase().contains("auto") {
            return Err(CliError::config(format!(
                "objective `{trimmed}`: automatic parameter selection is only available as lse(auto)"
            )));
        }
        Ok(ObjectiveSetting::Fixed(crate::spec_parse::parse_estimator_spec(trimmed)?))
    }
}

#[derive(Debug, Clone)]
pub enum OplSource {
    Blobs,
    Csv { train: PathBuf, valid: PathBuf, test: PathBuf },
}

#[derive(Debug, Clone)]
pub struct OplSettings {
    pub source: OplSource,
    pub objectives: Vec<ObjectiveSetting>,
    pub seeds: Vec<u64>,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub max_epochs: usize,
    pub patience: usize,
    pub noise_b: Option<f64>,
    pub flip_pf: Option<f64>,
    pub logging_fraction: f64,
    pub logging_tau: f64,
    pub logging_epochs: usize,
}

impl OplSettings {
    pub fn resolve(file: Option<&FileConfig>, args: &OplArgs) -> Result<Self, CliError> {
        let source_name: String =
            resolve(args.source.clone(), file, SECTION, "source", "blobs".into())?;
        let data: Option<PathBuf> = resolve_opt(args.data.clone(), file, SECTION, "data")?;
        let valid: Option<PathBuf> =
            resolve_opt(args.valid_data.clone(), file, SECTION, "valid-data")?;
        let test: Option<PathBuf> =
            resolve_opt(args.test_data.clone(), file, SECTION, "test-data")?;
        let source = match source_name.trim().to_ascii_lowercase().as_str() {
            "blobs" => {
                if data.is_some() || valid.is_some() || test.is_some() {
                    return Err(CliError::config(
                        "data/valid-data/test-data only apply to source = csv",
                    ));
                }
                OplSource::Blobs
            }
            "csv" => {
                let missing = |name: &str| {
                    CliError::config(format!("source = csv requires `{name}`"))
                };
                OplSource::Csv {
                    train: data.ok_or_else(|| missing("data"))?,
                    valid: valid.ok_or_else(|| missing("valid-data"))?,
                    test: test.ok_or_else(|| missing("test-data"))?,
                }
            }
            other => {
                return Err(CliError::config(format!(
                    "unknown source `{other}`; expected blobs or csv"
                )))
            }
        };
        let objectives_text: String = resolve(
            args.objectives.clone(),
            file,
            SECTION,
            "objectives",
            "lse(auto)".into(),
        )?;
        let objectives: Vec<ObjectiveSetting> = objectives_text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(ObjectiveSetting::parse)
            .collect::<Result<_, _>>()?;
        if objectives.is_empty() {
            return Err(CliError::config("objective list is empty"));
        }
        let seeds_text: String =
            resolve(args.seeds.clone(), file, SECTION, "seeds", "1,2,3".into())?;
        let settings = Self {
            source,
            objectives,
            seeds: parse_list(&seeds_text, "seeds")?,
            learning_rate: resolve(args.lr, file, SECTION, "lr", 1e-3)?,
            batch_size: resolve(args.batch_size, file, SECTION, "batch-size", 64)?,
            max_epochs: resolve(args.epochs, file, SECTION, "epochs", 300)?,
            patience: resolve(args.patience, file, SECTION, "patience", 10)?,
            noise_b: resolve_opt(args.noise_b, file, SECTION, "noise-b")?,
            flip_pf: resolve_opt(args.flip_pf, file, SECTION, "flip-pf")?,
            logging_fraction: resolve(
                args.logging_fraction,
                file,
                SECTION,
                "logging-fraction",
                0.1,
            )?,
            logging_tau: resolve(args.logging_tau, file, SECTION, "logging-tau", 10.0)?,
            logging_epochs: resolve(args.logging_epochs, file, SECTION, "logging-epochs", 25)?,
        };
        if !(settings.logging_fraction > 0.0 && settings.logging_fraction <= 1.0) {
            return Err(CliError::config(format!(
                "logging-fraction must lie in (0, 1], got {}",
                settings.logging_fraction
            )));
        }
        Ok(settings)
    }
}

/// The three splits of one learning problem.
pub struct OplData {
    pub train: LabeledSet,
    pub valid: LabeledSet,
    pub test: LabeledSet,
    pub class_count: usize,
}

/// One training run's report.
#[derive(Debug, Clone, Serialize)]
pub struct OplRunReport {
    pub objective: String,
    pub seed: u64,
    /// Tilt magnitude actually used when the objective is the tilted one.
    pub lambda: Option<f64>,
    pub logging_accuracy: f64,
    pub trained_accuracy: f64,
    pub best_epoch: usize,
    pub epochs_run: usize,
    /// Fraction of epoch-to-epoch steps where the full-training-set
    /// objective did not decrease.
    pub objective_nondecreasing_fraction: f64,
}

fn load_labeled_csv(path: &Path) -> Result<LabeledSet, CliError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record
            .map_err(|e| CliError::config(format!("{} row {}: {e}", path.display(), i + 2)))?;
        let fields: Vec<&str> = record.iter().collect();
        if fields.len() < 2 {
            return Err(CliError::config(format!(
                "{} row {}: need at least one feature column plus the label",
                path.display(),
                i + 2
            )));
        }
        let (label_field, feature_fields) = fields.split_last().expect("len checked");
        let row: Vec<f64> = feature_fields
            .iter()
            .map(|f| f.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|e| {
                CliError::config(format!("{} row {}: bad feature: {e}", path.display(), i + 2))
            })?;
        let label: usize = label_field.trim().parse().map_err(|e| {
            CliError::config(format!("{} row {}: bad label: {e}", path.display(), i + 2))
        })?;
        features.push(row);
        labels.push(label);
    }
    LabeledSet::new(features, labels).map_err(CliError::config)
}

/// Loads (or draws) the three splits for one seed. The synthetic benchmark
/// redraws per seed; file-backed data is fixed and only the training
/// randomness varies across seeds.
pub fn load_opl_data(source: &OplSource, seed: u64) -> Result<OplData, CliError> {
    match source {
        OplSource::Blobs => {
            let data = benchmark_blobs(seed);
            Ok(OplData {
                train: data.train,
                valid: data.valid,
                test: data.test,
                class_count: opl::BENCHMARK_CLASS_COUNT,
            })
        }
        OplSource::Csv { train, valid, test } => {
            let train = load_labeled_csv(train)?;
            let valid = load_labeled_csv(valid)?;
            let test = load_labeled_csv(test)?;
            let class_count = train
                .labels()
                .iter()
                .chain(valid.labels())
                .chain(test.labels())
                .max()
                .map(|m| m + 1)
                .unwrap_or(0);
            Ok(OplData { train, valid, test, class_count })
        }
    }
}

/// The full learning pipeline for one (objective, seed) pair:
/// fit a weak logging policy on a slice of the labels, serve it flattened,
/// convert the labeled training set to a bandit log under it, pick the tilt
/// magnitude if requested, train, and score both policies on the test set.
pub fn run_opl_single(
    data: &OplData,
    objective: &ObjectiveSetting,
    seed: u64,
    settings: &OplSettings,
) -> Result<OplRunReport, CliError> {
    let logging_count =
        ((settings.logging_fraction * data.train.len() as f64).ceil() as usize).max(1);
    let head = data.train.head(logging_count.min(data.train.len()));
    let fit_seed = RngHandle::new(seed).derive(LOGGING_FIT_STREAM).seed();
    let logging_fit = fit_softmax_classifier(
        &head,
        data.class_count,
        settings.logging_epochs,
        LOGGING_FIT_LR,
        LOGGING_FIT_BATCH,
        fit_seed,
    )
    .map_err(CliError::numeric)?;
    let logging = logging_fit
        .with_inverse_temperature(settings.logging_tau)
        .map_err(CliError::config)?;
    let bandit = supervised_to_bandit(
        data.train.features(),
        data.train.labels(),
        &logging,
        RngHandle::new(seed).derive(BANDIT_CONVERT_STREAM),
    )
    .map_err(CliError::numeric)?;

    let (spec, lambda) = match objective {
        ObjectiveSetting::Fixed(spec) => {
            let lambda = (spec.kind == EstimatorKind::Lse).then_some(spec.param);
            (spec.clone(), lambda)
        }
        ObjectiveSetting::LseAuto => {
            let uniform =
                LinearSoftmaxPolicy::zeros(data.class_count, data.train.feature_dim());
            let samples =
                compute_weighted_samples(&bandit, &uniform, DEFAULT_PROPENSITY_FLOOR)
                    .map_err(CliError::numeric)?;
            let rule = lambda_data_driven(&samples, &LambdaSelectConfig::default())
                .map_err(CliError::numeric)?;
            (EstimatorSpec::lse(rule.magnitude), Some(rule.magnitude))
        }
    };

    let cfg = OplConfig {
        objective: spec,
        learning_rate: settings.learning_rate,
        batch_size: settings.batch_size,
        max_epochs: settings.max_epochs,
        early_stop_patience: settings.patience,
        propensity_noise_b: settings.noise_b,
        reward_flip_pf: settings.flip_pf,
        seed,
    };
    let outcome = train_policy(&bandit, &data.valid, &cfg).map_err(CliError::numeric)?;

    let logging_accuracy =
        deterministic_accuracy(&logging, data.test.features(), data.test.labels())
            .map_err(CliError::numeric)?;
    let trained_accuracy =
        deterministic_accuracy(&outcome.policy, data.test.features(), data.test.labels())
            .map_err(CliError::numeric)?;
    let rows = &outcome.log.rows;
    let nondecreasing = if rows.len() < 2 {
        1.0
    } else {
        let ups = rows
            .windows(2)
            .filter(|pair| pair[1].objective >= pair[0].objective)
            .count();
        ups as f64 / (rows.len() - 1) as f64
    };
    Ok(OplRunReport {
        objective: objective.label(),
        seed,
        lambda,
        logging_accuracy,
        trained_accuracy,
        best_epoch: outcome.best_epoch,
        epochs_run: rows.len(),
        objective_nondecreasing_fraction: nondecreasing,
    })
}

/// Per-objective aggregate across seeds.
#[derive(Debug, Clone, Serialize)]
pub struct OplGroup {
    pub objective: String,
    pub runs: Vec<OplRunReport>,
    pub trained_accuracy_mean: f64,
    pub trained_accuracy_sd: f64,
}

pub fn run_opl(settings: &OplSettings) -> Result<Vec<OplGroup>, CliError> {
    let mut groups = Vec::new();
    for objective in &settings.objectives {
        let mut runs = Vec::new();
        for &seed in &settings.seeds {
            let data = load_opl_data(&settings.source, seed)?;
            runs.push(run_opl_single(&data, objective, seed, settings)?);
        }
        let k = runs.len() as f64;
        let mean = runs.iter().map(|r| r.trained_accuracy).sum::<f64>() / k;
        let sd = if runs.len() < 2 {
            0.0
        } else {
            (runs
                .iter()
                .map(|r| (r.trained_accuracy - mean).powi(2))
                .sum::<f64>()
                / (k - 1.0))
                .sqrt()
        };
        groups.push(OplGroup {
            objective: objective.label(),
            runs,
            trained_accuracy_mean: mean,
            trained_accuracy_sd: sd,
        });
    }
    Ok(groups)
}

pub fn to_csv(groups: &[OplGroup]) -> String {
    let mut out = String::from(
        "objective,seed,lambda,logging_accuracy,trained_accuracy,best_epoch\n",
    );
    for g in groups {
        for r in &g.runs {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                g.objective,
                r.seed,
                sig6_opt(r.lambda),
                sig6(r.logging_accuracy),
                sig6(r.trained_accuracy),
                r.best_epoch
            ));
        }
        out.push_str(&format!(
            "{},mean,,,{},\n{},sd,,,{},\n",
            g.objective,
            sig6(g.trained_accuracy_mean),
            g.objective,
            sig6(g.trained_accuracy_sd)
        ));
    }
    out
}
