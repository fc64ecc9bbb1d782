use crate::config::OplConfig;
use crate::error::OplError;
use crate::gradient::{objective_gradient, objective_value};
use crate::labeled::{deterministic_accuracy, LabeledSet};
use crate::noise_inject::{inject_propensity_noise, inject_reward_flip};
use lbf_core::{
    LbfDataset, LbfRecord, LinearSoftmaxPolicy, Policy, RngHandle, DEFAULT_PROPENSITY_FLOOR,
};
use rand::seq::SliceRandom;

/// Derived-stream labels separating the trainer's randomness sources so the
/// same seed never reuses a stream across purposes.
const PROPENSITY_NOISE_STREAM: u64 = 1;
const REWARD_FLIP_STREAM: u64 = 2;
const SHUFFLE_STREAM: u64 = 3;

/// One row of the per-epoch training log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochRow {
    pub epoch: usize,
    pub objective: f64,
    pub valid_accuracy: f64,
}

/// Per-epoch objective (on the full training set) and validation accuracy.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainingLog {
    pub rows: Vec<EpochRow>,
}

impl TrainingLog {
    /// CSV rendering with the schema `epoch,objective,valid_accuracy`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epoch,objective,valid_accuracy\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.epoch, r.objective, r.valid_accuracy));
        }
        out
    }
}

/// The trained policy (best validation accuracy seen), its training log, and
/// where the best epoch occurred.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub policy: LinearSoftmaxPolicy,
    pub log: TrainingLog,
    pub best_epoch: usize,
    pub best_valid_accuracy: f64,
}

/// Maximizes the configured estimator objective over linear softmax policies
/// by mini-batch stochastic gradient ascent from a uniform (all-zero-weight)
/// initialization.
///
/// Per epoch the records are reshuffled, consecutive batches update the
/// weights, the objective is recorded on the full training set, and the
/// policy is scored by deterministic accuracy on the labeled validation set.
/// Training stops after `early_stop_patience` consecutive epochs without a
/// strict accuracy improvement (or at `max_epochs`), returning the
/// best-validation policy.
///
/// When configured, propensity noise and reward flips corrupt the training
/// log before optimization, on RNG streams derived from `cfg.seed`; the
/// validation set is never corrupted. A non-finite objective aborts with an
/// error naming the last finite epoch.
pub fn train_policy(
    train: &LbfDataset,
    valid: &LabeledSet,
    cfg: &OplConfig,
) -> Result<TrainOutcome, OplError> {
    cfg.validate()?;
    if valid.feature_dim() != train.feature_dim() {
        return Err(OplError::InvalidData(format!(
            "validation features have dim {}, training has {}",
            valid.feature_dim(),
            train.feature_dim()
        )));
    }
    let handle = RngHandle::new(cfg.seed);
    let mut corrupted;
    let mut train = train;
    if let Some(b) = cfg.propensity_noise_b {
        corrupted =
            inject_propensity_noise(train, b, &mut handle.derive(PROPENSITY_NOISE_STREAM).rng())?;
        train = &corrupted;
    }
    if let Some(pf) = cfg.reward_flip_pf {
        corrupted = inject_reward_flip(train, pf, &mut handle.derive(REWARD_FLIP_STREAM).rng())?;
        train = &corrupted;
    }

    let records = train.records();
    let k = train.action_count();
    let d = train.feature_dim();
    let mut policy = LinearSoftmaxPolicy::zeros(k, d);

    let mut shuffle_rng = handle.derive(SHUFFLE_STREAM).rng();
    let mut order: Vec<usize> = (0..records.len()).collect();
    let mut batch: Vec<LbfRecord> = Vec::with_capacity(cfg.batch_size);

    let mut log = TrainingLog::default();
    let mut best_policy = policy.clone();
    let mut best_accuracy = -1.0;
    let mut best_epoch = 0;
    let mut epochs_without_improvement = 0usize;
    let mut last_finite = (0usize, f64::NAN);

    for epoch in 1..=cfg.max_epochs {
        order.shuffle(&mut shuffle_rng);
        for chunk in order.chunks(cfg.batch_size) {
            batch.clear();
            batch.extend(chunk.iter().map(|&i| records[i].clone()));
            let grad =
                objective_gradient(&batch, &policy, &cfg.objective, DEFAULT_PROPENSITY_FLOOR)?;
            let weights = policy.weights_mut();
            for (row, grow) in weights.iter_mut().zip(&grad) {
                for (w, g) in row.iter_mut().zip(grow) {
                    *w += cfg.learning_rate * g;
                }
            }
        }

        let objective =
            objective_value(records, &policy, &cfg.objective, DEFAULT_PROPENSITY_FLOOR)?;
        if !objective.is_finite() {
            return Err(OplError::Diverged {
                epoch,
                last_finite_epoch: last_finite.0,
                last_objective: last_finite.1,
            });
        }
        last_finite = (epoch, objective);
        let accuracy = deterministic_accuracy(&policy, valid.features(), valid.labels())?;
        log.rows.push(EpochRow { epoch, objective, valid_accuracy: accuracy });

        if accuracy > best_accuracy {
            best_accuracy = accuracy;
            best_policy = policy.clone();
            best_epoch = epoch;
            epochs_without_improvement = 0;
        } else {
            epochs_without_improvement += 1;
            if epochs_without_improvement >= cfg.early_stop_patience {
                break;
            }
        }
    }

    Ok(TrainOutcome { policy: best_policy, log, best_epoch, best_valid_accuracy: best_accuracy })
}

/// Fits a linear softmax classifier to labeled data by a fixed budget of
/// mini-batch cross-entropy SGD epochs (no early stopping), from zero
/// weights at unit temperature. Used to build logging policies from a small
/// labeled subset.
pub fn fit_softmax_classifier(
    data: &LabeledSet,
    action_count: usize,
    epochs: usize,
    learning_rate: f64,
    batch_size: usize,
    seed: u64,
) -> Result<LinearSoftmaxPolicy, OplError> {
    if action_count == 0 {
        return Err(OplError::InvalidParameter("action count must be positive".into()));
    }
    if let Some(&bad) = data.labels().iter().find(|&&l| l >= action_count) {
        return Err(OplError::InvalidData(format!(
            "label {bad} out of range for {action_count} actions"
        )));
    }
    if batch_size == 0 {
        return Err(OplError::InvalidParameter("batch size must be positive".into()));
    }
    if !(learning_rate >= 0.0) || !learning_rate.is_finite() {
        return Err(OplError::InvalidParameter(format!(
            "learning rate must be finite and non-negative, got {learning_rate}"
        )));
    }
    let d = data.feature_dim();
    let mut policy = LinearSoftmaxPolicy::zeros(action_count, d);
    let mut rng = RngHandle::new(seed).rng();
    let mut order: Vec<usize> = (0..data.len()).collect();
    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for chunk in order.chunks(batch_size) {
            // Mean log-likelihood ascent: (1/m)Σ ∇log π(label|x).
            let mut grad = vec![vec![0.0; d]; action_count];
            for &i in chunk {
                let x = &data.features()[i];
                let y = data.labels()[i];
                let probs = policy.probs(x);
                for (c, grow) in grad.iter_mut().enumerate() {
                    let indicator = if c == y { 1.0 } else { 0.0 };
                    let coef = (indicator - probs[c]) / chunk.len() as f64;
                    for (g, xv) in grow.iter_mut().zip(x) {
                        *g += coef * xv;
                    }
                }
            }
            let weights = policy.weights_mut();
            for (row, grow) in weights.iter_mut().zip(&grad) {
                for (w, g) in row.iter_mut().zip(grow) {
                    *w += learning_rate * g;
                }
            }
        }
    }
    Ok(policy)
}

/// Serializes a policy to the flat checkpoint text format: three header
/// lines (action count, feature dim, temperature divisor) followed by one
/// weight per line in row-major order. Floats print in shortest-roundtrip
/// form, so parsing recovers them bit for bit.
pub fn policy_to_checkpoint(policy: &LinearSoftmaxPolicy) -> String {
    let mut out = format!(
        "{}\n{}\n{}\n",
        policy.action_count(),
        policy.feature_dim(),
        policy.inverse_temperature()
    );
    for row in policy.weights() {
        for w in row {
            out.push_str(&format!("{w}\n"));
        }
    }
    out
}

/// Parses the checkpoint format written by [`policy_to_checkpoint`].
pub fn policy_from_checkpoint(text: &str) -> Result<LinearSoftmaxPolicy, OplError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let mut header = |name: &str| -> Result<String, OplError> {
        lines
            .next()
            .map(String::from)
            .ok_or_else(|| OplError::InvalidData(format!("checkpoint missing {name}")))
    };
    let k: usize = header("action count")?
        .parse()
        .map_err(|e| OplError::InvalidData(format!("bad action count: {e}")))?;
    let d: usize = header("feature dim")?
        .parse()
        .map_err(|e| OplError::InvalidData(format!("bad feature dim: {e}")))?;
    let tau: f64 = header("temperature divisor")?
        .parse()
        .map_err(|e| OplError::InvalidData(format!("bad temperature divisor: {e}")))?;
    let values: Result<Vec<f64>, _> = lines.map(str::parse::<f64>).collect();
    let values = values.map_err(|e| OplError::InvalidData(format!("bad weight: {e}")))?;
    if values.len() != k * d {
        return Err(OplError::InvalidData(format!(
            "expected {k}×{d} = {} weights, found {}",
            k * d,
            values.len()
        )));
    }
    let weights: Vec<Vec<f64>> = values.chunks(d).map(<[f64]>::to_vec).collect();
    Ok(LinearSoftmaxPolicy::new(weights, tau)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blobs::gaussian_blobs;
    use estimators::EstimatorSpec;
    use lbf_core::supervised_to_bandit;

    fn smoke_setup(seed: u64) -> (LbfDataset, LabeledSet) {
        let train_set = gaussian_blobs(600, 2, 2, 3.0, &mut RngHandle::new(seed).rng()).unwrap();
        let valid = gaussian_blobs(300, 2, 2, 3.0, &mut RngHandle::new(seed ^ 99).rng()).unwrap();
        let logging = LinearSoftmaxPolicy::zeros(2, 2);
        let train = supervised_to_bandit(
            train_set.features(),
            train_set.labels(),
            &logging,
            RngHandle::new(seed ^ 7),
        )
        .unwrap();
        (train, valid)
    }

    #[test]
    fn zero_learning_rate_returns_the_initialization() {
        let (train, valid) = smoke_setup(40);
        let cfg = OplConfig {
            learning_rate: 0.0,
            max_epochs: 3,
            ..OplConfig::with_objective(EstimatorSpec::lse(0.5))
        };
        let out = train_policy(&train, &valid, &cfg).unwrap();
        assert_eq!(out.policy, LinearSoftmaxPolicy::zeros(2, 2));
    }

    #[test]
    fn identical_seeds_give_identical_weights() {
        let (train, valid) = smoke_setup(41);
        let cfg = OplConfig {
            max_epochs: 5,
            learning_rate: 0.05,
            ..OplConfig::with_objective(EstimatorSpec::lse(0.3))
        };
        let a = train_policy(&train, &valid, &cfg).unwrap();
        let b = train_policy(&train, &valid, &cfg).unwrap();
        assert_eq!(a.policy, b.policy);
        assert_eq!(a.log, b.log);
        let c = train_policy(&train, &valid, &OplConfig { seed: 1, ..cfg }).unwrap();
        assert_ne!(a.policy, c.policy);
    }

    #[test]
    fn training_beats_uniform_logging_on_separable_blobs() {
        let (train, valid) = smoke_setup(42);
        let cfg = OplConfig {
            learning_rate: 0.05,
            max_epochs: 120,
            ..OplConfig::with_objective(EstimatorSpec::lse(0.5))
        };
        let out = train_policy(&train, &valid, &cfg).unwrap();
        let logging_acc =
            deterministic_accuracy(&LinearSoftmaxPolicy::zeros(2, 2), valid.features(), valid.labels())
                .unwrap();
        assert!(
            out.best_valid_accuracy > logging_acc,
            "trained {} vs logging {logging_acc}",
            out.best_valid_accuracy
        );
        assert!(out.best_valid_accuracy > 0.9, "separable blobs should be easy");
        // Log shape: one row per completed epoch, epochs numbered from 1;
        // the best epoch is the first to reach the best accuracy.
        assert_eq!(out.log.rows[0].epoch, 1);
        assert!(out.log.rows.len() <= 120);
        let first_best = out
            .log
            .rows
            .iter()
            .find(|r| r.valid_accuracy == out.best_valid_accuracy)
            .unwrap();
        assert_eq!(out.best_epoch, first_best.epoch);
    }

    #[test]
    fn early_stopping_respects_patience() {
        let (train, valid) = smoke_setup(43);
        // Zero learning rate never improves after epoch 1's tie-break entry,
        // so training halts after exactly patience further epochs.
        let cfg = OplConfig {
            learning_rate: 0.0,
            early_stop_patience: 3,
            max_epochs: 50,
            ..OplConfig::with_objective(EstimatorSpec::ips())
        };
        let out = train_policy(&train, &valid, &cfg).unwrap();
        assert_eq!(out.log.rows.len(), 1 + 3);
        assert_eq!(out.best_epoch, 1);
    }

    #[test]
    fn corruption_changes_training_but_not_validation_scoring() {
        let (train, valid) = smoke_setup(44);
        let base = OplConfig {
            learning_rate: 0.05,
            max_epochs: 10,
            ..OplConfig::with_objective(EstimatorSpec::ips())
        };
        let clean = train_policy(&train, &valid, &base).unwrap();
        let noisy = train_policy(
            &train,
            &valid,
            &OplConfig { propensity_noise_b: Some(0.1), reward_flip_pf: Some(0.2), ..base },
        )
        .unwrap();
        assert_ne!(clean.policy, noisy.policy);
    }

    #[test]
    fn training_log_csv_schema() {
        let log = TrainingLog {
            rows: vec![EpochRow { epoch: 1, objective: 0.5, valid_accuracy: 0.25 }],
        };
        assert_eq!(log.to_csv(), "epoch,objective,valid_accuracy\n1,0.5,0.25\n");
    }

    #[test]
    fn checkpoint_roundtrips_bit_for_bit() {
        let w = vec![vec![0.1, -2.5e-17, 3.0], vec![f64::MIN_POSITIVE, 1.0 / 3.0, 9e100]];
        let p = LinearSoftmaxPolicy::new(w, 10.0).unwrap();
        let text = policy_to_checkpoint(&p);
        let back = policy_from_checkpoint(&text).unwrap();
        assert_eq!(p, back);
        assert_eq!(text.lines().count(), 3 + 6);
    }

    #[test]
    fn checkpoint_rejects_malformed_input() {
        assert!(policy_from_checkpoint("").is_err());
        assert!(policy_from_checkpoint("2\n2\n1.0\n0.0\n").is_err()); // too few weights
        assert!(policy_from_checkpoint("2\n1\n1.0\nx\ny\n").is_err());
    }

    #[test]
    fn classifier_fit_learns_separable_labels() {
        let set = gaussian_blobs(500, 3, 3, 4.0, &mut RngHandle::new(50).rng()).unwrap();
        let fitted = fit_softmax_classifier(&set, 3, 40, 0.05, 32, 7).unwrap();
        let acc = deterministic_accuracy(&fitted, set.features(), set.labels()).unwrap();
        assert!(acc > 0.9, "classifier accuracy {acc}");
        // Determinism.
        let again = fit_softmax_classifier(&set, 3, 40, 0.05, 32, 7).unwrap();
        assert_eq!(fitted, again);
    }
}
