use crate::error::CliError;
use std::path::Path;
use std::str::FromStr;

/// Output format for the table printed to stdout (and `--out`):
/// `csv` rounds floats to 6 significant digits, `json` keeps full precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(CliError::config(format!(
                "unknown output format `{other}`; expected csv or json"
            ))),
        }
    }
}

/// A float rendered with 6 significant digits: fixed-point notation for
/// moderate magnitudes, scientific beyond.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-4..=5).contains(&exponent) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - exponent) as usize;
    format!("{x:.decimals$}")
}

/// Optional float for table cells: empty when absent.
pub fn sig6_opt(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_default()
}

/// Prints the finished table/JSON to stdout and, when `out` is set, writes
/// the same bytes to that file.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text).map_err(|e| {
            CliError::numeric(format!("cannot write {}: {e}", path.display()))
        })?;
    }
    Ok(())
}
