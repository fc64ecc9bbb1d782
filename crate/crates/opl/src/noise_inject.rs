use crate::error::OplError;
use lbf_core::LbfDataset;
use rand::Rng;
use rand_distr::{Distribution, Gamma};

/// Replaces each record's logged propensity by min(1, π₀/u) with a fresh
/// multiplicative disturbance u ~ Gamma(shape b, rate b) per record (mean 1,
/// variance 1/b; b → ∞ recovers the clean log). Contexts, actions, and
/// rewards are untouched; record order is preserved.
///
/// Draws use `rand_distr`'s Gamma sampler — the Marsaglia–Tsang
/// squeeze-rejection method for shape ≥ 1, extended to shape < 1 by the
/// standard uniform-power boost.
pub fn inject_propensity_noise<R: Rng>(
    dataset: &LbfDataset,
    b: f64,
    rng: &mut R,
) -> Result<LbfDataset, OplError> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(OplError::InvalidParameter(format!(
            "noise shape must be positive and finite, got {b}"
        )));
    }
    let gamma = Gamma::new(b, 1.0 / b)
        .map_err(|e| OplError::InvalidParameter(format!("gamma disturbance: {e}")))?;
    let out = dataset.map_records(|mut rec| {
        let u: f64 = gamma.sample(rng);
        // u can underflow to 0 for tiny shapes; π₀/0⁺ → ∞ caps at 1 anyway.
        rec.propensity = (rec.propensity / u.max(f64::MIN_POSITIVE)).min(1.0);
        Ok(rec)
    })?;
    Ok(out)
}

/// Flips each binary reward independently with probability `pf`. Rewards
/// must be exactly 0 or 1; contexts, actions, and propensities are
/// untouched; record order is preserved.
pub fn inject_reward_flip<R: Rng>(
    dataset: &LbfDataset,
    pf: f64,
    rng: &mut R,
) -> Result<LbfDataset, OplError> {
    if !(0.0..=1.0).contains(&pf) {
        return Err(OplError::InvalidParameter(format!(
            "flip probability must lie in [0, 1], got {pf}"
        )));
    }
    if let Some((i, r)) = dataset
        .records()
        .iter()
        .enumerate()
        .find(|(_, r)| r.reward != 0.0 && r.reward != 1.0)
    {
        return Err(OplError::InvalidData(format!(
            "record {i} has non-binary reward {}; flipping needs rewards in {{0, 1}}",
            r.reward
        )));
    }
    let out = dataset.map_records(|mut rec| {
        if rng.gen_range(0.0..1.0) < pf {
            rec.reward = 1.0 - rec.reward;
        }
        Ok(rec)
    })?;
    Ok(out)
}
