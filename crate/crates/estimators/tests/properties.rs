//! Property and invariant tests for the estimator family: tilt monotonicity,
//! shrinkage bounds, concavity, population-level inequalities evaluated on
//! exact finite distributions, reduction identities, and the gradient map.

use estimators::{
    estimate_es, estimate_ips, estimate_ips_tr, estimate_ix, estimate_ls, estimate_ls_lin,
    estimate_lse, estimate_pm, estimate_snips, lse_gradient_weights, lse_of_values,
};
use lbf_core::{RawSample, WeightedSample};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, LogNormal};

fn magnitude_grid() -> Vec<f64> {
    // 20 tilt magnitudes spanning nine decades.
    (0..20).map(|i| 10f64.powf(-4.0 + 8.0 * i as f64 / 19.0)).collect()
}

#[test]
fn lse_is_monotone_in_the_tilt_over_random_inputs() {
    let mut rng = StdRng::seed_from_u64(11);
    let grid = magnitude_grid();
    for _ in 0..100 {
        let n = rng.gen_range(1..40);
        let z: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..50.0)).collect();
        let values: Vec<f64> = grid.iter().map(|&m| lse_of_values(&z, m).unwrap()).collect();
        // Larger magnitude = more negative tilt = smaller value.
        for pair in values.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-12,
                "value rose with the tilt magnitude: {} -> {}",
                pair[0],
                pair[1]
            );
        }
    }
}

#[test]
fn lse_stays_between_min_and_mean() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..200 {
        let n = rng.gen_range(1..60);
        let z: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..100.0)).collect();
        let z_min = z.iter().cloned().fold(f64::INFINITY, f64::min);
        let z_mean = z.iter().sum::<f64>() / z.len() as f64;
        for &m in &[0.001, 0.1, 1.0, 10.0, 1000.0] {
            let v = lse_of_values(&z, m).unwrap();
            assert!(v >= z_min - 1e-12 && v <= z_mean + 1e-12, "{v} outside [{z_min}, {z_mean}]");
        }
    }
}

#[test]
fn lse_is_concave_in_the_sample_vector() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..200 {
        let n = rng.gen_range(1..30);
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..20.0)).collect();
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..20.0)).collect();
        let t: f64 = rng.gen_range(0.0..1.0);
        let mixed: Vec<f64> =
            a.iter().zip(&b).map(|(&x, &y)| t * x + (1.0 - t) * y).collect();
        for &m in &[0.05, 0.5, 2.0] {
            let lhs = lse_of_values(&mixed, m).unwrap();
            let rhs = t * lse_of_values(&a, m).unwrap() + (1.0 - t) * lse_of_values(&b, m).unwrap();
            assert!(lhs >= rhs - 1e-10, "concavity violated: {lhs} < {rhs}");
        }
    }
}

proptest! {
    #[test]
    fn prop_monotone_and_bounded(
        z in proptest::collection::vec(0.0f64..100.0, 1..25),
        idx in 0usize..19,
    ) {
        let grid = magnitude_grid();
        let lo = lse_of_values(&z, grid[idx + 1]).unwrap();
        let hi = lse_of_values(&z, grid[idx]).unwrap();
        prop_assert!(lo <= hi + 1e-12);
        let z_min = z.iter().cloned().fold(f64::INFINITY, f64::min);
        let z_mean = z.iter().sum::<f64>() / z.len() as f64;
        prop_assert!(lo >= z_min - 1e-12 && hi <= z_mean + 1e-12);
    }
}

/// A finite discrete distribution handled by exact summation.
struct Discrete {
    outcomes: Vec<f64>,
    probs: Vec<f64>,
}

impl Discrete {
    fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.outcomes.iter().zip(&self.probs).map(|(&z, &p)| p * f(z)).sum()
    }
}

fn test_distributions() -> Vec<Discrete> {
    vec![
        Discrete { outcomes: vec![0.0, 1.0, 4.0, 9.0], probs: vec![0.4, 0.3, 0.2, 0.1] },
        Discrete { outcomes: vec![0.5, 0.5], probs: vec![0.5, 0.5] },
        Discrete { outcomes: vec![0.0, 1.0, 10.0, 100.0], probs: vec![0.25; 4] },
        Discrete { outcomes: vec![2.0], probs: vec![1.0] },
    ]
}

#[test]
fn tilted_variance_is_within_the_moment_bound() {
    // V(e^{λZ}) ≤ |λ|^{1+ε}·E[Z^{1+ε}] for non-negative Z.
    for dist in test_distributions() {
        for &mag in &[0.01, 0.1, 1.0, 10.0] {
            let lambda = -mag;
            let mean_tilt = dist.expect(|z| (lambda * z).exp());
            let second_tilt = dist.expect(|z| (2.0 * lambda * z).exp());
            let variance = second_tilt - mean_tilt * mean_tilt;
            for &eps in &[0.0, 0.5, 1.0] {
                let moment = dist.expect(|z| z.powf(1.0 + eps));
                assert!(
                    variance <= mag.powf(1.0 + eps) * moment + 1e-12,
                    "variance bound failed: V={variance}, bound={}",
                    mag.powf(1.0 + eps) * moment
                );
            }
        }
    }
}

#[test]
fn population_lse_brackets_the_mean_from_below() {
    // E[Z] ≥ (1/λ)·log E[e^{λZ}] ≥ E[Z] − |λ|^ε·E[Z^{1+ε}]/(1+ε).
    for dist in test_distributions() {
        for &mag in &[0.01, 0.1, 1.0, 10.0] {
            let lambda = -mag;
            let mean = dist.expect(|z| z);
            let population_lse = dist.expect(|z| (lambda * z).exp()).ln() / lambda;
            assert!(population_lse <= mean + 1e-12);
            for &eps in &[0.0, 0.5, 1.0] {
                let moment = dist.expect(|z| z.powf(1.0 + eps));
                let lower = mean - mag.powf(eps) * moment / (1.0 + eps);
                assert!(
                    population_lse >= lower - 1e-12,
                    "lower bracket failed: lse={population_lse}, lower={lower}"
                );
            }
        }
    }
}

#[test]
fn scalar_exponential_inequality_on_negative_grid() {
    // e^y ≤ 1 + y + |y|^{1+ε}/(1+ε) for y < 0.
    for i in 0..200 {
        let y = -(10f64.powf(-3.0 + 4.5 * i as f64 / 199.0));
        for &eps in &[0.0, 0.5, 1.0] {
            let bound = 1.0 + y + (-y).powf(1.0 + eps) / (1.0 + eps);
            assert!(y.exp() <= bound + 1e-15, "e^{y} = {} > {bound}", y.exp());
        }
    }
}

fn random_raw_samples(rng: &mut StdRng, n: usize) -> Vec<RawSample> {
    (0..n)
        .map(|_| {
            let logging_prob: f64 = rng.gen_range(0.05..1.0);
            let target_prob: f64 = rng.gen_range(0.0..1.0);
            let reward: f64 = rng.gen_range(0.0..2.0);
            RawSample { target_prob, logging_prob, reward }
        })
        .collect()
}

#[test]
fn reduction_identities_on_random_samples() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..50 {
        let raw = random_raw_samples(&mut rng, 37);
        let weighted: Vec<WeightedSample> = raw.iter().map(RawSample::weighted).collect();
        let ips = estimate_ips(&weighted).unwrap();

        // Exact reductions.
        assert_eq!(estimate_pm(&weighted, 0.0, -1.0).unwrap(), ips);
        assert_eq!(estimate_es(&raw, 1.0).unwrap(), ips);
        assert_eq!(estimate_ips_tr(&weighted, f64::INFINITY).unwrap(), ips);
        let max_w = weighted.iter().map(|s| s.weight).fold(0.0, f64::max);
        assert_eq!(estimate_ips_tr(&weighted, max_w + 1.0).unwrap(), ips);

        // Small-parameter limits.
        let ls = estimate_ls(&weighted, 1e-9).unwrap();
        assert!((ls - ips).abs() <= 1e-6 * ips.abs().max(1.0));
        let ix = estimate_ix(&raw, 1e-12).unwrap();
        assert!((ix - ips).abs() <= 1e-6 * ips.abs().max(1.0));
        let ls_lin = estimate_ls_lin(&raw, 1e-9).unwrap();
        assert!((ls_lin - ips).abs() <= 1e-6 * ips.abs().max(1.0));

        // Scale invariance of the self-normalized estimator.
        let snips = estimate_snips(&weighted).unwrap();
        let scaled: Vec<WeightedSample> =
            weighted.iter().map(|s| WeightedSample::new(s.weight * 7.0, s.reward)).collect();
        assert!((estimate_snips(&scaled).unwrap() - snips).abs() < 1e-12);
    }
}

#[test]
fn lse_variance_never_exceeds_ips_variance() {
    // 5000 repeated draws of one fixed scenario: log-normal weights with
    // uniform rewards. The robust aggregate must not be noisier than the
    // plain average.
    let trials = 5000;
    let n = 200;
    let mut rng = StdRng::seed_from_u64(42);
    let weight_dist = LogNormal::new(0.0, 1.0).unwrap();
    let mut ips_estimates = Vec::with_capacity(trials);
    let mut lse_estimates = Vec::with_capacity(trials);
    for _ in 0..trials {
        let samples: Vec<WeightedSample> = (0..n)
            .map(|_| WeightedSample::new(weight_dist.sample(&mut rng), rng.gen_range(0.0..1.0)))
            .collect();
        ips_estimates.push(estimate_ips(&samples).unwrap());
        lse_estimates.push(estimate_lse(&samples, 0.5).unwrap());
    }
    let variance = |xs: &[f64]| {
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64
    };
    let v_ips = variance(&ips_estimates);
    let v_lse = variance(&lse_estimates);
    let margin = 1.0 + 3.0 / (trials as f64).sqrt();
    assert!(v_lse <= v_ips * margin, "LSE variance {v_lse} vs IPS variance {v_ips}");
}

#[test]
fn gradient_weights_match_finite_differences() {
    let z = [0.3, 1.2, 0.7, 2.5, 0.05];
    for &mag in &[0.2, 0.8, 3.0] {
        let weights = lse_gradient_weights(&z, mag).unwrap();
        assert!((weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let h = 1e-6;
        for i in 0..z.len() {
            let mut up = z.to_vec();
            up[i] += h;
            let mut down = z.to_vec();
            down[i] -= h;
            let fd = (lse_of_values(&up, mag).unwrap() - lse_of_values(&down, mag).unwrap())
                / (2.0 * h);
            let rel = (fd - weights[i]).abs() / weights[i].abs().max(1e-12);
            assert!(rel < 1e-6, "index {i}: finite difference {fd} vs weight {}", weights[i]);
        }
    }
}

#[test]
fn single_sample_degenerate_case_for_every_estimator() {
    let raw = [RawSample { target_prob: 0.6, logging_prob: 0.3, reward: 0.5 }];
    let w: Vec<WeightedSample> = raw.iter().map(RawSample::weighted).collect();
    let z = w[0].weighted_reward;
    assert_eq!(estimate_ips(&w).unwrap(), z);
    assert_eq!(estimate_snips(&w).unwrap(), raw[0].reward);
    assert_eq!(estimate_lse(&w, 0.7).unwrap(), z);
    assert_eq!(estimate_ips_tr(&w, f64::INFINITY).unwrap(), z);
    assert_eq!(estimate_pm(&w, 0.0, -1.0).unwrap(), z);
}
