use lbf_core::{
    compute_weighted_samples, load_lbf_csv, save_lbf_csv, LbfDataset, LbfRecord,
    LinearSoftmaxPolicy, RngHandle,
};
use rand::Rng;
use std::io::Write;

fn random_dataset(seed: u64, n: usize, k: usize, d: usize) -> LbfDataset {
    let mut rng = RngHandle::new(seed).rng();
    let records = (0..n)
        .map(|_| {
            let context: Vec<f64> = (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let action = rng.gen_range(0..k);
            let propensity = rng.gen_range(0.01..1.0);
            let reward = rng.gen_range(0.0..5.0);
            LbfRecord::new(context, action, propensity, reward).unwrap()
        })
        .collect();
    LbfDataset::new(records, k).unwrap()
}

#[test]
fn roundtrip_preserves_every_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.csv");
    let ds = random_dataset(21, 100, 4, 3);
    save_lbf_csv(&ds, &path).unwrap();
    let back = load_lbf_csv(&path).unwrap();
    assert_eq!(back.len(), ds.len());
    assert_eq!(back.feature_dim(), ds.feature_dim());
    for (a, b) in ds.records().iter().zip(back.records()) {
        assert_eq!(a.action, b.action);
        assert!((a.propensity - b.propensity).abs() <= 1e-12);
        assert!((a.reward - b.reward).abs() <= 1e-12);
        for (x, y) in a.context.iter().zip(&b.context) {
            assert!((x - y).abs() <= 1e-12);
        }
    }
}

#[test]
fn single_row_file_loads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.csv");
    std::fs::write(&path, "f0,f1,action,propensity,reward\n0.5,-1.0,1,0.25,2.0\n").unwrap();
    let ds = load_lbf_csv(&path).unwrap();
    assert_eq!(ds.len(), 1);
    assert_eq!(ds.feature_dim(), 2);
    assert_eq!(ds.records()[0].action, 1);
}

#[test]
fn empty_body_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    std::fs::write(&path, "f0,action,propensity,reward\n").unwrap();
    let err = load_lbf_csv(&path).unwrap_err();
    assert!(err.to_string().contains("empty dataset"), "got: {err}");
}

#[test]
fn malformed_row_names_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "f0,action,propensity,reward").unwrap();
    writeln!(f, "0.1,0,0.5,1.0").unwrap();
    writeln!(f, "0.2,zero,0.5,1.0").unwrap();
    drop(f);
    let err = load_lbf_csv(&path).unwrap_err();
    assert!(err.to_string().contains("line 3"), "got: {err}");
}

#[test]
fn out_of_range_propensity_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("badp.csv");
    std::fs::write(&path, "f0,action,propensity,reward\n0.1,0,1.5,1.0\n").unwrap();
    let err = load_lbf_csv(&path).unwrap_err();
    assert!(err.to_string().contains("propensity"), "got: {err}");
}

#[test]
fn identity_target_means_unit_weights_and_ips_equals_mean_reward() {
    // Uniform logging recorded exactly; scoring against the same uniform
    // policy with no floor gives all weights 1.
    let k = 3;
    let target = LinearSoftmaxPolicy::zeros(k, 2);
    let mut rng = RngHandle::new(33).rng();
    let records: Vec<LbfRecord> = (0..200)
        .map(|_| {
            let x: Vec<f64> = (0..2).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a = rng.gen_range(0..k);
            LbfRecord::new(x, a, 1.0 / k as f64, rng.gen_range(0.0..1.0)).unwrap()
        })
        .collect();
    let ds = LbfDataset::new(records, k).unwrap();
    let ws = compute_weighted_samples(&ds, &target, 0.0).unwrap();
    let mean_reward: f64 = ds.records().iter().map(|r| r.reward).sum::<f64>() / ds.len() as f64;
    let ips: f64 = ws.iter().map(|s| s.weighted_reward).sum::<f64>() / ws.len() as f64;
    for s in &ws {
        assert!((s.weight - 1.0).abs() < 1e-12);
    }
    assert!((ips - mean_reward).abs() < 1e-12);
}
