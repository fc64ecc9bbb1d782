use crate::error::SelectError;
use estimators::EstimatorSpec;

/// Picks the candidate with the smallest score; ties go to the smaller
/// parameter magnitude (the conservative, closer-to-plain-weighting choice).
///
/// The score closure defines the criterion — mean-squared error against a
/// known truth for evaluation studies, negated validation accuracy for
/// learning runs. Candidates scoring NaN are skipped; if every score is NaN
/// the search fails. With a deterministic closure the result is a pure
/// function of the inputs.
pub fn grid_search<F>(candidates: &[EstimatorSpec], mut score: F) -> Result<EstimatorSpec, SelectError>
where
    F: FnMut(&EstimatorSpec) -> f64,
{
    if candidates.is_empty() {
        return Err(SelectError::EmptyInput);
    }
    let mut best: Option<(EstimatorSpec, f64)> = None;
    for &candidate in candidates {
        let s = score(&candidate);
        if s.is_nan() {
            continue;
        }
        let better = match &best {
            None => true,
            Some((incumbent, incumbent_score)) => {
                s < *incumbent_score
                    || (s == *incumbent_score
                        && candidate.param.abs() < incumbent.param.abs())
            }
        };
        if better {
            best = Some((candidate, s));
        }
    }
    best.map(|(spec, _)| spec).ok_or_else(|| {
        SelectError::DegenerateInput("every candidate scored NaN".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_candidate_is_returned() {
        let only = EstimatorSpec::lse(0.25);
        assert_eq!(grid_search(&[only], |_| 1.0).unwrap(), only);
    }

    #[test]
    fn picks_the_minimum_score() {
        let grid: Vec<EstimatorSpec> =
            [0.001, 0.01, 0.1, 1.0, 10.0].iter().map(|&m| EstimatorSpec::lse(m)).collect();
        let best = grid_search(&grid, |spec| (spec.param.log10() + 1.0).powi(2)).unwrap();
        assert_eq!(best.param, 0.1);
    }

    #[test]
    fn ties_break_toward_smaller_magnitude() {
        let grid = [EstimatorSpec::lse(10.0), EstimatorSpec::lse(0.01), EstimatorSpec::lse(1.0)];
        let best = grid_search(&grid, |_| 7.0).unwrap();
        assert_eq!(best.param, 0.01);
    }

    #[test]
    fn deterministic_under_identical_inputs() {
        let grid: Vec<EstimatorSpec> =
            (1..=20).map(|i| EstimatorSpec::lse(i as f64 / 10.0)).collect();
        let score = |spec: &EstimatorSpec| ((spec.param * 1.3).sin() * 1e3).round();
        let a = grid_search(&grid, score).unwrap();
        let b = grid_search(&grid, score).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn nan_scores_are_skipped_and_all_nan_fails() {
        let grid = [EstimatorSpec::lse(1.0), EstimatorSpec::lse(2.0)];
        let best = grid_search(&grid, |spec| {
            if spec.param == 1.0 {
                f64::NAN
            } else {
                5.0
            }
        })
        .unwrap();
        assert_eq!(best.param, 2.0);
        assert!(grid_search(&grid, |_| f64::NAN).is_err());
        assert!(grid_search(&[], |_| 0.0).is_err());
    }
}
