use crate::data::{LbfDataset, LbfRecord};
use crate::error::CoreError;
use std::path::Path;

/// CSV layout: feature columns `f0..f{d-1}`, then `action,propensity,reward`.
/// UTF-8, '.' decimal separator, newline-terminated rows.
///
/// The action count is inferred as `max(action) + 1`; use
/// [`load_lbf_csv_with_actions`] to widen it when some actions never occur in
/// the log.
pub fn load_lbf_csv(path: impl AsRef<Path>) -> Result<LbfDataset, CoreError> {
    load_lbf_csv_with_actions(path, None)
}

/// As [`load_lbf_csv`] but with an explicit action count (must cover every
/// action present in the file).
pub fn load_lbf_csv_with_actions(
    path: impl AsRef<Path>,
    action_count: Option<usize>,
) -> Result<LbfDataset, CoreError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path.as_ref())
        .map_err(csv_to_core)?;

    let headers = reader.headers().map_err(csv_to_core)?.clone();
    let feature_dim = validate_header(&headers)?;

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_to_core)?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        if row.len() != feature_dim + 3 {
            return Err(CoreError::MalformedCsv {
                line,
                message: format!("expected {} fields, found {}", feature_dim + 3, row.len()),
            });
        }
        let parse_f64 = |idx: usize, name: &str| -> Result<f64, CoreError> {
            row[idx].trim().parse::<f64>().map_err(|e| CoreError::MalformedCsv {
                line,
                message: format!("bad {name} value {:?}: {e}", &row[idx]),
            })
        };
        let context: Vec<f64> = (0..feature_dim)
            .map(|j| parse_f64(j, &format!("f{j}")))
            .collect::<Result<_, _>>()?;
        let action: usize =
            row[feature_dim].trim().parse().map_err(|e| CoreError::MalformedCsv {
                line,
                message: format!("bad action value {:?}: {e}", &row[feature_dim]),
            })?;
        let propensity = parse_f64(feature_dim + 1, "propensity")?;
        let reward = parse_f64(feature_dim + 2, "reward")?;
        records.push(
            LbfRecord::new(context, action, propensity, reward)
                .map_err(|e| CoreError::MalformedCsv { line, message: e.to_string() })?,
        );
    }
    if records.is_empty() {
        return Err(CoreError::InvalidDataset("empty dataset".into()));
    }
    let inferred = records.iter().map(|r| r.action + 1).max().unwrap_or(1);
    let count = match action_count {
        Some(c) => c.max(inferred),
        None => inferred,
    };
    LbfDataset::new(records, count)
}

/// Writes a dataset in the layout documented on [`load_lbf_csv`]. Floats are
/// serialized with full round-trip precision.
pub fn save_lbf_csv(dataset: &LbfDataset, path: impl AsRef<Path>) -> Result<(), CoreError> {
    let mut writer = csv::Writer::from_path(path.as_ref()).map_err(csv_to_core)?;
    let d = dataset.feature_dim();
    let mut header: Vec<String> = (0..d).map(|j| format!("f{j}")).collect();
    header.extend(["action".into(), "propensity".into(), "reward".into()]);
    writer.write_record(&header).map_err(csv_to_core)?;
    for r in dataset.records() {
        let mut row: Vec<String> = r.context.iter().map(|v| format_full(*v)).collect();
        row.push(r.action.to_string());
        row.push(format_full(r.propensity));
        row.push(format_full(r.reward));
        writer.write_record(&row).map_err(csv_to_core)?;
    }
    writer.flush()?;
    Ok(())
}

fn format_full(v: f64) -> String {
    // Shortest representation that round-trips exactly.
    let mut s = format!("{v}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}

fn validate_header(headers: &csv::StringRecord) -> Result<usize, CoreError> {
    let fields: Vec<&str> = headers.iter().map(str::trim).collect();
    if fields.len() < 4 {
        return Err(CoreError::MalformedCsv {
            line: 1,
            message: "header must contain f0.., action, propensity, reward".into(),
        });
    }
    let feature_dim = fields.len() - 3;
    for (j, name) in fields.iter().take(feature_dim).enumerate() {
        let expected = format!("f{j}");
        if *name != expected {
            return Err(CoreError::MalformedCsv {
                line: 1,
                message: format!("expected feature column {expected:?}, found {name:?}"),
            });
        }
    }
    let tail = &fields[feature_dim..];
    if tail != ["action", "propensity", "reward"] {
        return Err(CoreError::MalformedCsv {
            line: 1,
            message: format!("trailing columns must be action,propensity,reward, found {tail:?}"),
        });
    }
    Ok(feature_dim)
}

fn csv_to_core(e: csv::Error) -> CoreError {
    match e.kind() {
        csv::ErrorKind::Io(_) => {
            if let csv::ErrorKind::Io(io) = e.into_kind() {
                CoreError::Io(io)
            } else {
                unreachable!()
            }
        }
        _ => CoreError::MalformedCsv {
            line: e.position().map(|p| p.line()).unwrap_or(0),
            message: e.to_string(),
        },
    }
}
