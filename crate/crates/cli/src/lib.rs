//! Command-line front end: configuration, pipelines and result documents.

pub mod config;
pub mod document;
pub mod export;
pub mod run;

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use thiserror::Error;

pub use config::{parse_config, read_config, Command, ConfigError, Format, RunConfig};
pub use document::ResultDocument;

/// Environment variable that sizes the worker pool.
pub const WORKERS_ENV: &str = "PDEM_WORKERS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("computation failed: {0}")]
    Numerics(#[from] pdem_core::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot serialize result: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub command: Command,
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub timestamp: bool,
}

/// Runs one command end to end. Returns the document and its rendering;
/// the rendering is also written to the output path when there is one.
pub fn execute(inv: &Invocation) -> Result<(ResultDocument, String), CliError> {
    let mut cfg = read_config(&inv.config, inv.command)?;
    if let Some(f) = inv.format {
        cfg.output.format = f;
    }
    if let Some(p) = &inv.out {
        cfg.output.path = Some(p.display().to_string());
    }
    let mut doc = run::run(&cfg)?;
    if inv.timestamp {
        doc.generated_at = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
    }
    let text = export::render(&doc, cfg.output.format)?;
    if let Some(path) = &cfg.output.path {
        write(Path::new(path), &text)?;
    }
    Ok((doc, text))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Sizes the worker pool from `PDEM_WORKERS` when it is set.
pub fn init_workers_from_env() -> Result<(), ConfigError> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            pdem_core::parallel::init_workers(n);
            Ok(())
        }
        _ => Err(ConfigError::Invalid {
            field: WORKERS_ENV.into(),
            message: format!("expected a positive integer, got {raw:?}"),
        }),
    }
}
