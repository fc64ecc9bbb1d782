use std::fmt;

/// Errors surfaced by the command-line front end, split by exit code:
/// configuration problems (bad flags, bad config file, invalid parameter
/// combinations) exit with 2, failures during the computation itself exit
/// with 3. Human-readable text goes to stderr; stdout carries only tables.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
}

impl CliError {
    pub fn config(msg: impl fmt::Display) -> Self {
        CliError::Config(msg.to_string())
    }

    pub fn numeric(msg: impl fmt::Display) -> Self {
        CliError::Numeric(msg.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Numeric(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}
