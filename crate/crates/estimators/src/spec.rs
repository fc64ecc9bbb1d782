use crate::error::EstimatorError;

/// Default exponent for the power-mean estimator (harmonic interpolation).
pub const PM_DEFAULT_S: f64 = -1.0;

/// The estimator families this crate implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorKind {
    /// Plain importance sampling: mean of wᵢrᵢ.
    Ips,
    /// Importance sampling with weights clipped at M.
    IpsTr,
    /// Self-normalized importance sampling: Σwᵢrᵢ / Σwᵢ.
    Snips,
    /// Power-mean interpolation between IPS and the plain reward mean.
    Pm,
    /// Exponential smoothing of the logging probability: r·π_target/π_log^α.
    Es,
    /// Implicit exploration: r·π_target/(π_log+η).
    Ix,
    /// Optimistic shrinkage: r·τw/(w²+τ).
    Os,
    /// Logarithmic per-sample smoothing: (1/λ̃)·log(1+λ̃wr).
    Ls,
    /// Linearized logarithmic smoothing on the raw propensity.
    LsLin,
    /// Log-sum-exponential aggregate with negative tilt.
    Lse,
}

impl EstimatorKind {
    /// Kinds whose estimate is a mean of per-sample terms.
    pub fn is_separable(self) -> bool {
        !matches!(self, EstimatorKind::Snips | EstimatorKind::Lse)
    }

    /// Stable lowercase name used in CLI arguments and CSV output.
    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::Ips => "ips",
            EstimatorKind::IpsTr => "ips-tr",
            EstimatorKind::Snips => "snips",
            EstimatorKind::Pm => "pm",
            EstimatorKind::Es => "es",
            EstimatorKind::Ix => "ix",
            EstimatorKind::Os => "os",
            EstimatorKind::Ls => "ls",
            EstimatorKind::LsLin => "ls-lin",
            EstimatorKind::Lse => "lse",
        }
    }

    pub fn parse(name: &str) -> Result<Self, EstimatorError> {
        match name.to_ascii_lowercase().as_str() {
            "ips" => Ok(EstimatorKind::Ips),
            "ips-tr" | "ips_tr" | "tr" => Ok(EstimatorKind::IpsTr),
            "snips" => Ok(EstimatorKind::Snips),
            "pm" => Ok(EstimatorKind::Pm),
            "es" => Ok(EstimatorKind::Es),
            "ix" => Ok(EstimatorKind::Ix),
            "os" => Ok(EstimatorKind::Os),
            "ls" => Ok(EstimatorKind::Ls),
            "ls-lin" | "ls_lin" => Ok(EstimatorKind::LsLin),
            "lse" => Ok(EstimatorKind::Lse),
            other => Err(EstimatorError::InvalidParameter(format!(
                "unknown estimator {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A fully specified estimator: the family plus its hyperparameter.
///
/// `param` means: clip level M (IPS-TR), interpolation weight λ̂ (PM),
/// smoothing exponent α (ES), exploration bonus η (IX), shrinkage τ (OS),
/// smoothing rate λ̃ (LS / LS-LIN), tilt magnitude λ (LSE); unused for IPS and
/// SNIPS. `extra` holds PM's power exponent s (defaults to −1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorSpec {
    pub kind: EstimatorKind,
    pub param: f64,
    pub extra: Option<f64>,
}

impl EstimatorSpec {
    pub fn new(kind: EstimatorKind, param: f64) -> Self {
        Self { kind, param, extra: None }
    }

    pub fn ips() -> Self {
        Self::new(EstimatorKind::Ips, 0.0)
    }

    pub fn ips_tr(clip: f64) -> Self {
        Self::new(EstimatorKind::IpsTr, clip)
    }

    pub fn snips() -> Self {
        Self::new(EstimatorKind::Snips, 0.0)
    }

    pub fn pm(lambda_hat: f64) -> Self {
        Self { kind: EstimatorKind::Pm, param: lambda_hat, extra: Some(PM_DEFAULT_S) }
    }

    pub fn pm_with_exponent(lambda_hat: f64, s: f64) -> Self {
        Self { kind: EstimatorKind::Pm, param: lambda_hat, extra: Some(s) }
    }

    pub fn es(alpha: f64) -> Self {
        Self::new(EstimatorKind::Es, alpha)
    }

    pub fn ix(eta: f64) -> Self {
        Self::new(EstimatorKind::Ix, eta)
    }

    pub fn os(tau: f64) -> Self {
        Self::new(EstimatorKind::Os, tau)
    }

    pub fn ls(lambda_tilde: f64) -> Self {
        Self::new(EstimatorKind::Ls, lambda_tilde)
    }

    pub fn ls_lin(lambda_tilde: f64) -> Self {
        Self::new(EstimatorKind::LsLin, lambda_tilde)
    }

    pub fn lse(lambda_magnitude: f64) -> Self {
        Self::new(EstimatorKind::Lse, lambda_magnitude)
    }

    /// PM's power exponent (meaningful only for PM specs).
    pub fn pm_exponent(&self) -> f64 {
        self.extra.unwrap_or(PM_DEFAULT_S)
    }

    /// `name(param)` label used in tables, e.g. `lse(0.1)` or `ips`.
    pub fn label(&self) -> String {
        match self.kind {
            EstimatorKind::Ips | EstimatorKind::Snips => self.kind.name().to_string(),
            _ => format!("{}({})", self.kind.name(), self.param),
        }
    }
}

impl std::fmt::Display for EstimatorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// An estimate plus, for separable estimators, the per-sample terms whose
/// mean it is.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateResult {
    pub value: f64,
    pub per_sample_terms: Option<Vec<f64>>,
}
