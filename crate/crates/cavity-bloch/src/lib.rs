//! Command-line front end for `cavity-bloch-core`: config parsing, dispatch and export.

pub mod config;
pub mod envelope;
pub mod export;
pub mod run;
pub mod units;

use config::{Command, OutputFormat, RunConfig, Violation};
use envelope::{ResultEnvelope, SCHEMA_VERSION};
use std::fmt;
use std::path::{Path, PathBuf};

/// Failure classes, one per exit code.
#[derive(Debug)]
pub enum CliError {
    Config(Vec<Violation>),
    Numerical(cavity_bloch_core::Error),
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(v) => {
                write!(f, "invalid configuration ({} problem{}):", v.len(), if v.len() == 1 { "" } else { "s" })?;
                for x in v {
                    write!(f, "\n  {x}")?;
                }
                Ok(())
            }
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

fn timestamp() -> String {
    use time::format_description::well_known::Rfc3339;
    time::OffsetDateTime::now_utc().format(&Rfc3339).unwrap_or_else(|_| "unknown".to_string())
}

/// Parses `source` and runs it.
pub fn execute(command: Command, source: &str, seed: u64) -> Result<(RunConfig, ResultEnvelope), CliError> {
    let config = config::parse_config(command, source).map_err(CliError::Config)?;
    let payload = run::run(&config, seed).map_err(CliError::Numerical)?;
    let envelope = ResultEnvelope {
        schema_version: SCHEMA_VERSION.to_string(),
        command,
        config_echo: config.source.clone(),
        produced_at: timestamp(),
        seed,
        payload,
    };
    Ok((config, envelope))
}

/// Renders the envelope in `format`.
pub fn render(envelope: &ResultEnvelope, format: OutputFormat) -> Result<String, CliError> {
    let bad = |e: String| CliError::Io { path: PathBuf::from("<render>"), source: std::io::Error::other(e) };
    match format {
        OutputFormat::Csv => export::to_csv(&envelope.payload).map_err(|e| bad(e.to_string())),
        OutputFormat::Json => export::to_json(envelope).map_err(|e| bad(e.to_string())),
        OutputFormat::SvgScatter => Ok(export::to_svg(envelope)),
    }
}

pub fn read_config(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
