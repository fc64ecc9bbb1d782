use crate::error::CliError;
use estimators::{EstimatorKind, EstimatorSpec};

/// Parses one estimator label of the form `name` or `name(param)` — the
/// same syntax the output tables print (`ips`, `snips`, `lse(0.1)`,
/// `ips-tr(10)`, `pm(0.35)`, …).
pub fn parse_estimator_spec(label: &str) -> Result<EstimatorSpec, CliError> {
    let label = label.trim();
    let (name, param) = match label.find('(') {
        Some(open) => {
            let inner = label[open + 1..].strip_suffix(')').ok_or_else(|| {
                CliError::config(format!("estimator `{label}`: missing closing parenthesis"))
            })?;
            let param: f64 = inner.trim().parse().map_err(|e| {
                CliError::config(format!("estimator `{label}`: bad parameter: {e}"))
            })?;
            (&label[..open], Some(param))
        }
        None => (label, None),
    };
    let kind = EstimatorKind::parse(name.trim())
        .map_err(|e| CliError::config(format!("estimator `{label}`: {e}")))?;
    match (kind, param) {
        (EstimatorKind::Ips, None) => Ok(EstimatorSpec::ips()),
        (EstimatorKind::Snips, None) => Ok(EstimatorSpec::snips()),
        (EstimatorKind::Ips | EstimatorKind::Snips, Some(_)) => Err(CliError::config(
            format!("estimator `{label}`: {} takes no parameter", kind.name()),
        )),
        // The power-mean constructor fills in its default exponent; the
        // generic constructor would leave it unset.
        (EstimatorKind::Pm, Some(p)) => Ok(EstimatorSpec::pm(p)),
        (_, Some(p)) => Ok(EstimatorSpec::new(kind, p)),
        (_, None) => Err(CliError::config(format!(
            "estimator `{label}`: {} needs a parameter, e.g. {}(0.1)",
            kind.name(),
            kind.name()
        ))),
    }
}

/// Parses a comma-separated estimator list.
pub fn parse_estimator_list(text: &str) -> Result<Vec<EstimatorSpec>, CliError> {
    let specs: Vec<EstimatorSpec> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_estimator_spec)
        .collect::<Result<_, _>>()?;
    if specs.is_empty() {
        return Err(CliError::config("estimator list is empty"));
    }
    Ok(specs)
}

/// The default estimator grid for evaluation benchmarks: both plain
/// estimators plus every parameterized family over its standard candidate
/// set.
pub fn default_grid() -> Vec<EstimatorSpec> {
    let mut specs = vec![EstimatorSpec::ips(), EstimatorSpec::snips()];
    for m in [2.0, 5.0, 10.0, 50.0] {
        specs.push(EstimatorSpec::ips_tr(m));
    }
    for l in [0.0, 0.2, 0.4, 0.6, 0.8] {
        specs.push(EstimatorSpec::pm(l));
    }
    for a in [0.0, 0.1, 0.4, 0.7, 1.0] {
        specs.push(EstimatorSpec::es(a));
    }
    for decade in [0.01, 0.1, 1.0, 10.0, 100.0] {
        specs.push(EstimatorSpec::ix(decade));
        specs.push(EstimatorSpec::os(decade));
        specs.push(EstimatorSpec::ls(decade));
        specs.push(EstimatorSpec::ls_lin(decade));
        specs.push(EstimatorSpec::lse(decade));
    }
    specs
}
