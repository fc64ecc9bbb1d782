use crate::runner::OpeResult;

/// Renders benchmark results as CSV with the schema
/// `scenario,estimator,param,n,trials,bias,variance,mse`.
/// The `param` column is empty for parameter-free estimators.
pub fn results_to_csv(scenario_name: &str, results: &[OpeResult]) -> String {
    let mut out = String::from("scenario,estimator,param,n,trials,bias,variance,mse\n");
    for r in results {
        let param = match r.spec.kind {
            estimators::EstimatorKind::Ips | estimators::EstimatorKind::Snips => String::new(),
            _ => format!("{}", r.spec.param),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            scenario_name,
            r.spec.kind.name(),
            param,
            r.stats.n_samples,
            r.stats.n_trials,
            r.stats.bias,
            r.stats.variance,
            r.stats.mse
        ));
    }
    out
}
