use crate::error::CliError;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

/// Keys accepted in each config-file section. The parser rejects anything
/// outside this table, so typos fail loudly instead of silently using a
/// default.
const KNOWN_KEYS: &[(&str, &[&str])] = &[
    ("global", &["seed", "out", "format", "threads"]),
    ("mean-estimate", &["scale", "shape", "lambda", "trials", "ns"]),
    (
        "ope",
        &[
            "scenario",
            "estimators",
            "n",
            "trials",
            "noise",
            "dump-estimates",
            // gaussian
            "mu-target",
            "mu-logging",
            "sigma2",
            "alpha",
            // lomax / heavy-tail weight pair
            "shape-target",
            "shape-logging",
            "beta",
            // heavy-tail family
            "family-shape",
            "truth-draws",
            // pareto-mean
            "scale",
            "shape",
        ],
    ),
    (
        "opl",
        &[
            "source",
            "data",
            "valid-data",
            "test-data",
            "objectives",
            "seeds",
            "lr",
            "batch-size",
            "epochs",
            "patience",
            "noise-b",
            "flip-pf",
            "logging-fraction",
            "logging-tau",
            "logging-epochs",
        ],
    ),
    (
        "lambda",
        &[
            "n", "nu-hat", "nu-tilde", "epsilon", "delta", "tv", "floor", "data",
            "policy",
        ],
    ),
];

/// Parsed config file: one flat key=value map per command section.
#[derive(Debug, Default)]
pub struct FileConfig {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl FileConfig {
    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(String::as_str)
    }
}

pub fn load_config_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::config(format!("cannot read config file {}: {e}", path.display()))
    })?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<FileConfig, CliError> {
    let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| {
                    CliError::config(format!("line {line_no}: unterminated section header"))
                })?
                .trim()
                .to_string();
            let known = KNOWN_KEYS.iter().any(|(s, _)| *s == name);
            if !known {
                return Err(CliError::config(format!(
                    "line {line_no}: unknown section [{name}]; expected one of {}",
                    KNOWN_KEYS
                        .iter()
                        .map(|(s, _)| format!("[{s}]"))
                        .collect::<Vec<_>>()
                        .join(", ")
                )));
            }
            if sections.contains_key(&name) {
                return Err(CliError::config(format!(
                    "line {line_no}: section [{name}] appears twice"
                )));
            }
            sections.insert(name.clone(), BTreeMap::new());
            current = Some(name);
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::config(format!(
                "line {line_no}: expected `key = value`, got `{line}`"
            )));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        let Some(section) = &current else {
            return Err(CliError::config(format!(
                "line {line_no}: key `{key}` appears before any [section] header"
            )));
        };
        let allowed = KNOWN_KEYS
            .iter()
            .find(|(s, _)| s == section)
            .map(|(_, keys)| *keys)
            .unwrap_or(&[]);
        if !allowed.contains(&key.as_str()) {
            return Err(CliError::config(format!(
                "line {line_no}: unknown key `{key}` in section [{section}]; known keys: {}",
                allowed.join(", ")
            )));
        }
        let entries = sections.get_mut(section).expect("section inserted above");
        if entries.contains_key(&key) {
            return Err(CliError::config(format!(
                "line {line_no}: key `{key}` appears twice in section [{section}]"
            )));
        }
        entries.insert(key, value);
    }
    Ok(FileConfig { sections })
}

/// Parses a config-file value, naming the section and key on failure.
pub fn parse_value<T: FromStr>(section: &str, key: &str, raw: &str) -> Result<T, CliError>
where
    T::Err: Display,
{
    raw.parse().map_err(|e| {
        CliError::config(format!("[{section}] {key} = {raw}: {e}"))
    })
}

/// One resolved setting: command-line flag beats config file beats default.
pub fn resolve<T: FromStr>(
    flag: Option<T>,
    file: Option<&FileConfig>,
    section: &str,
    key: &str,
    default: T,
) -> Result<T, CliError>
where
    T::Err: Display,
{
    Ok(resolve_opt(flag, file, section, key)?.unwrap_or(default))
}

/// Like [`resolve`] but without a default: absent everywhere stays `None`.
pub fn resolve_opt<T: FromStr>(
    flag: Option<T>,
    file: Option<&FileConfig>,
    section: &str,
    key: &str,
) -> Result<Option<T>, CliError>
where
    T::Err: Display,
{
    if let Some(v) = flag {
        return Ok(Some(v));
    }
    match file.and_then(|f| f.get(section, key)) {
        Some(raw) => Ok(Some(parse_value(section, key, raw)?)),
        None => Ok(None),
    }
}
