use crate::error::OpeError;
use crate::noise::RewardNoiseSpec;
use lbf_core::RawSample;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal, StudentT};

/// Seed of the dedicated stream used to compute Monte-Carlo ground truths
/// for families without a closed form. Fixed so the cached truth is
/// reproducible across runs and platforms.
pub const HEAVY_TAIL_TRUTH_SEED: u64 = 0x6d63_2d74_7275_7468;

/// Number of draws behind a default Monte-Carlo ground truth.
pub const DEFAULT_TRUTH_DRAWS: usize = 10_000_000;

/// One-dimensional Gaussian evaluation scenario: the logged action is
/// u ~ N(mu_logging, sigma2), the target policy is N(mu_target, sigma2),
/// and the reward is e^{alpha·u²}. Finite value requires 2·alpha·sigma2 < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianScenario {
    pub mu_target: f64,
    pub mu_logging: f64,
    pub sigma2: f64,
    pub alpha: f64,
}

impl GaussianScenario {
    pub fn new(mu_target: f64, mu_logging: f64, sigma2: f64, alpha: f64) -> Result<Self, OpeError> {
        for (name, v) in [
            ("target mean", mu_target),
            ("logging mean", mu_logging),
            ("variance", sigma2),
            ("reward growth", alpha),
        ] {
            if !v.is_finite() {
                return Err(OpeError::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        if !(sigma2 > 0.0) {
            return Err(OpeError::InvalidParameter(format!(
                "variance must be positive, got {sigma2}"
            )));
        }
        if 2.0 * alpha * sigma2 >= 1.0 {
            return Err(OpeError::InvalidParameter(format!(
                "finite value needs 2·alpha·sigma2 < 1, got {}",
                2.0 * alpha * sigma2
            )));
        }
        Ok(Self { mu_target, mu_logging, sigma2, alpha })
    }

    /// Closed-form target value: (1−2ασ²)^{−1/2}·exp(αμ₁²/(1−2ασ²)).
    pub fn true_value(&self) -> f64 {
        let c = 1.0 - 2.0 * self.alpha * self.sigma2;
        c.powf(-0.5) * (self.alpha * self.mu_target * self.mu_target / c).exp()
    }

    /// Closed-form (1+ε)-th moment of the weighted reward under logging:
    /// with A = 1+ε and c_A = 1−2Aασ²,
    /// E[(wr)^A] = c_A^{−1/2}·exp((b²/c_A + d)/(2σ²)),
    /// b = μ₂+A(μ₁−μ₂), d = −μ₂²+A(μ₂²−μ₁²).
    pub fn moment(&self, epsilon: f64) -> Result<f64, OpeError> {
        check_epsilon(epsilon)?;
        if epsilon == 0.0 {
            return Ok(self.true_value());
        }
        let a = 1.0 + epsilon;
        let c_a = 1.0 - 2.0 * a * self.alpha * self.sigma2;
        if c_a <= 0.0 {
            return Err(OpeError::InvalidParameter(format!(
                "the (1+ε)-moment is infinite: needs 2(1+ε)·alpha·sigma2 < 1, got {}",
                2.0 * a * self.alpha * self.sigma2
            )));
        }
        let b = self.mu_logging + a * (self.mu_target - self.mu_logging);
        let d = -self.mu_logging * self.mu_logging
            + a * (self.mu_logging * self.mu_logging - self.mu_target * self.mu_target);
        Ok(c_a.powf(-0.5) * ((b * b / c_a + d) / (2.0 * self.sigma2)).exp())
    }

    fn density(&self, mu: f64, u: f64) -> f64 {
        let norm = 1.0 / (self.sigma2 * 2.0 * std::f64::consts::PI).sqrt();
        norm * (-(u - mu) * (u - mu) / (2.0 * self.sigma2)).exp()
    }

    fn draw_sample<R: Rng>(&self, rng: &mut R) -> RawSample {
        let z: f64 = StandardNormal.sample(rng);
        let u = self.mu_logging + self.sigma2.sqrt() * z;
        RawSample {
            target_prob: self.density(self.mu_target, u),
            logging_prob: self.density(self.mu_logging, u),
            reward: (self.alpha * u * u).exp(),
        }
    }
}

/// One-dimensional Lomax evaluation scenario (scale fixed at 1): logged
/// action u from a Lomax with shape `shape_logging`, target shape
/// `shape_target`, reward (1+u)^beta. Finite value requires
/// shape_target > beta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LomaxScenario {
    pub shape_target: f64,
    pub shape_logging: f64,
    pub beta: f64,
}

impl LomaxScenario {
    pub fn new(shape_target: f64, shape_logging: f64, beta: f64) -> Result<Self, OpeError> {
        for (name, v) in [("target shape", shape_target), ("logging shape", shape_logging)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(OpeError::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(OpeError::InvalidParameter(format!(
                "reward exponent must be non-negative and finite, got {beta}"
            )));
        }
        if shape_target <= beta {
            return Err(OpeError::InvalidParameter(format!(
                "finite value needs target shape > reward exponent, got {shape_target} <= {beta}"
            )));
        }
        Ok(Self { shape_target, shape_logging, beta })
    }

    /// Closed-form target value α/(α−β).
    pub fn true_value(&self) -> f64 {
        self.shape_target / (self.shape_target - self.beta)
    }

    /// Closed-form (1+ε)-th moment of the weighted reward under logging:
    /// value^{1+ε}·k^{−ε}/(1+ε(1−k)) with k = α'/(α−β).
    pub fn moment(&self, epsilon: f64) -> Result<f64, OpeError> {
        check_epsilon(epsilon)?;
        if epsilon == 0.0 {
            return Ok(self.true_value());
        }
        let k = self.shape_logging / (self.shape_target - self.beta);
        let denom = 1.0 + epsilon * (1.0 - k);
        if denom <= 0.0 {
            return Err(OpeError::InvalidParameter(format!(
                "the (1+ε)-moment is infinite: needs 1+ε(1−k) > 0, got {denom}"
            )));
        }
        Ok(self.true_value().powf(1.0 + epsilon) * k.powf(-epsilon) / denom)
    }

    fn density(shape: f64, u: f64) -> f64 {
        shape * (1.0 + u).powf(-(shape + 1.0))
    }

    /// Inverse-CDF draw from the logging Lomax: u = (1−q)^{−1/α'} − 1.
    fn draw_action<R: Rng>(&self, rng: &mut R) -> f64 {
        let q: f64 = rng.gen_range(0.0..1.0);
        (1.0 - q).powf(-1.0 / self.shape_logging) - 1.0
    }

    fn draw_sample<R: Rng>(&self, rng: &mut R) -> RawSample {
        let u = self.draw_action(rng);
        RawSample {
            target_prob: Self::density(self.shape_target, u),
            logging_prob: Self::density(self.shape_logging, u),
            reward: (1.0 + u).powf(self.beta),
        }
    }
}

/// Heavy-tailed reward families with no printed closed form. Rewards are the
/// absolute value of a draw, keeping them non-negative without changing the
/// tail behavior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeavyTailFamily {
    /// Generalized extreme value with tail index 1/shape (shape = ξ > 0).
    /// Inverse-CDF: ((−ln q)^{−ξ} − 1)/ξ.
    Gev { shape: f64 },
    /// Student's t with the given degrees of freedom (library sampler).
    StudentT { dof: f64 },
    /// Fréchet with the given shape; inverse-CDF (−ln q)^{−1/shape}.
    Frechet { shape: f64 },
    /// Scale-1 Lomax with the given shape; inverse-CDF (1−q)^{−1/shape} − 1.
    Lomax { shape: f64 },
}

impl HeavyTailFamily {
    fn validate(&self) -> Result<(), OpeError> {
        let (name, v) = match *self {
            HeavyTailFamily::Gev { shape } => ("extreme-value shape", shape),
            HeavyTailFamily::StudentT { dof } => ("degrees of freedom", dof),
            HeavyTailFamily::Frechet { shape } => ("heavy-tail shape", shape),
            HeavyTailFamily::Lomax { shape } => ("tail shape", shape),
        };
        if !(v > 0.0 && v.is_finite()) {
            return Err(OpeError::InvalidParameter(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
        Ok(())
    }

    /// |draw| from the family.
    fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            HeavyTailFamily::Gev { shape } => {
                let q: f64 = rng.gen_range(0.0..1.0);
                (((-q.ln()).powf(-shape) - 1.0) / shape).abs()
            }
            HeavyTailFamily::StudentT { dof } => {
                let t: f64 = StudentT::new(dof).expect("validated dof").sample(rng);
                t.abs()
            }
            HeavyTailFamily::Frechet { shape } => {
                let q: f64 = rng.gen_range(0.0..1.0);
                (-q.ln()).powf(-1.0 / shape)
            }
            HeavyTailFamily::Lomax { shape } => {
                let q: f64 = rng.gen_range(0.0..1.0);
                (1.0 - q).powf(-1.0 / shape) - 1.0
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            HeavyTailFamily::Gev { .. } => "gev",
            HeavyTailFamily::StudentT { .. } => "student-t",
            HeavyTailFamily::Frechet { .. } => "frechet",
            HeavyTailFamily::Lomax { .. } => "lomax",
        }
    }
}

/// Scenario with heavy-tailed rewards drawn independently of the logged
/// action; importance weights come from a Lomax policy pair. The target
/// value E[reward] has no closed form and is estimated once at construction
/// by a seeded Monte-Carlo average, cached for the scenario's lifetime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeavyTailScenario {
    pub family: HeavyTailFamily,
    pub shape_target: f64,
    pub shape_logging: f64,
    true_value: f64,
    truth_draws: usize,
}

impl HeavyTailScenario {
    /// Default weight pair matching the closed-form Lomax scenario.
    pub const DEFAULT_SHAPE_TARGET: f64 = 2.5;
    pub const DEFAULT_SHAPE_LOGGING: f64 = 1.5;

    pub fn new(
        family: HeavyTailFamily,
        shape_target: f64,
        shape_logging: f64,
    ) -> Result<Self, OpeError> {
        Self::with_truth_budget(family, shape_target, shape_logging, DEFAULT_TRUTH_DRAWS)
    }

    /// Same scenario with a smaller (or larger) ground-truth budget — the
    /// truth stream is always seeded by [`HEAVY_TAIL_TRUTH_SEED`].
    pub fn with_truth_budget(
        family: HeavyTailFamily,
        shape_target: f64,
        shape_logging: f64,
        truth_draws: usize,
    ) -> Result<Self, OpeError> {
        family.validate()?;
        for (name, v) in [("target shape", shape_target), ("logging shape", shape_logging)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(OpeError::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if truth_draws == 0 {
            return Err(OpeError::InvalidParameter(
                "ground-truth budget must be at least 1 draw".into(),
            ));
        }
        let mut rng = <ChaCha12Rng as rand::SeedableRng>::seed_from_u64(HEAVY_TAIL_TRUTH_SEED);
        let mut sum = 0.0;
        for _ in 0..truth_draws {
            sum += family.draw(&mut rng);
        }
        Ok(Self {
            family,
            shape_target,
            shape_logging,
            true_value: sum / truth_draws as f64,
            truth_draws,
        })
    }

    pub fn true_value(&self) -> f64 {
        self.true_value
    }

    pub fn truth_draws(&self) -> usize {
        self.truth_draws
    }

    fn draw_sample<R: Rng>(&self, rng: &mut R) -> RawSample {
        let q: f64 = rng.gen_range(0.0..1.0);
        let u = (1.0 - q).powf(-1.0 / self.shape_logging) - 1.0;
        RawSample {
            target_prob: LomaxScenario::density(self.shape_target, u),
            logging_prob: LomaxScenario::density(self.shape_logging, u),
            reward: self.family.draw(rng),
        }
    }
}

/// Direct mean estimation of a scale/shape Pareto draw: unit weights, the
/// draw itself as the reward. Finite mean requires shape > 1; the truth is
/// shape·scale/(shape−1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoMeanScenario {
    pub scale: f64,
    pub shape: f64,
}

impl ParetoMeanScenario {
    pub fn new(scale: f64, shape: f64) -> Result<Self, OpeError> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(OpeError::InvalidParameter(format!(
                "scale must be positive and finite, got {scale}"
            )));
        }
        if !(shape > 1.0 && shape.is_finite()) {
            return Err(OpeError::InvalidParameter(format!(
                "finite mean needs shape > 1, got {shape}"
            )));
        }
        Ok(Self { scale, shape })
    }

    pub fn true_value(&self) -> f64 {
        self.shape * self.scale / (self.shape - 1.0)
    }

    /// Closed-form (1+ε)-th raw moment: a·x_m^{1+ε}/(a−1−ε); infinite at
    /// a ≤ 1+ε (the regime the heavy-tail studies live in).
    pub fn moment(&self, epsilon: f64) -> Result<f64, OpeError> {
        check_epsilon(epsilon)?;
        if self.shape <= 1.0 + epsilon {
            return Err(OpeError::InvalidParameter(format!(
                "the (1+ε)-moment is infinite: needs shape > 1+ε, got {} <= {}",
                self.shape,
                1.0 + epsilon
            )));
        }
        Ok(self.shape * self.scale.powf(1.0 + epsilon) / (self.shape - 1.0 - epsilon))
    }

    fn draw_sample<R: Rng>(&self, rng: &mut R) -> RawSample {
        let q: f64 = rng.gen_range(0.0..1.0);
        RawSample {
            target_prob: 1.0,
            logging_prob: 1.0,
            reward: self.scale * (1.0 - q).powf(-1.0 / self.shape),
        }
    }
}

/// Any of the synthetic evaluation scenarios behind one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    Gaussian(GaussianScenario),
    Lomax(LomaxScenario),
    HeavyTail(HeavyTailScenario),
    ParetoMean(ParetoMeanScenario),
}

impl Scenario {
    pub fn name(&self) -> String {
        match self {
            Scenario::Gaussian(_) => "gaussian".into(),
            Scenario::Lomax(_) => "lomax".into(),
            Scenario::HeavyTail(s) => format!("heavy-{}", s.family.name()),
            Scenario::ParetoMean(_) => "pareto-mean".into(),
        }
    }

    pub fn true_value(&self) -> f64 {
        match self {
            Scenario::Gaussian(s) => s.true_value(),
            Scenario::Lomax(s) => s.true_value(),
            Scenario::HeavyTail(s) => s.true_value(),
            Scenario::ParetoMean(s) => s.true_value(),
        }
    }

    /// Closed-form (1+ε)-moment of the weighted reward where one exists.
    pub fn moment(&self, epsilon: f64) -> Result<f64, OpeError> {
        match self {
            Scenario::Gaussian(s) => s.moment(epsilon),
            Scenario::Lomax(s) => s.moment(epsilon),
            Scenario::ParetoMean(s) => s.moment(epsilon),
            Scenario::HeavyTail(_) => Err(OpeError::InvalidParameter(
                "this scenario has no closed-form moment".into(),
            )),
        }
    }

    /// Draws one logged dataset of `n` samples. Per sample the stream is
    /// consumed in a fixed order: action draw(s), then reward noise.
    pub fn draw_trial<R: Rng>(
        &self,
        n: usize,
        noise: &RewardNoiseSpec,
        rng: &mut R,
    ) -> Vec<RawSample> {
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let mut s = match self {
                Scenario::Gaussian(sc) => sc.draw_sample(rng),
                Scenario::Lomax(sc) => sc.draw_sample(rng),
                Scenario::HeavyTail(sc) => sc.draw_sample(rng),
                Scenario::ParetoMean(sc) => sc.draw_sample(rng),
            };
            s.reward = noise.apply(s.reward, rng);
            out.push(s);
        }
        out
    }
}

fn check_epsilon(epsilon: f64) -> Result<(), OpeError> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(OpeError::InvalidParameter(format!(
            "heavy-tail order must lie in [0, 1], got {epsilon}"
        )));
    }
    Ok(())
}
