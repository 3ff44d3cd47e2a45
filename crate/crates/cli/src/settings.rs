//! Effective run configuration.
//!
//! Precedence, highest first: command-line flags, the `--config` TOML file,
//! the `DELSARTE_BUDGET` environment variable (budget only), built-in
//! defaults. The resolved values are echoed into every output so a saved
//! run identifies itself.

use crate::output::Format;
use anyhow::{bail, Context, Result};
use serde::Deserialize;
use std::path::Path;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 42;
pub const BUDGET_ENV: &str = "DELSARTE_BUDGET";

/// Recognized config file keys. Anything else is rejected so a typo cannot
/// silently fall back to a default.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    budget: Option<u64>,
    format: Option<String>,
    seed: Option<u64>,
}

#[derive(Debug)]
pub struct Settings {
    pub format: Format,
    file_budget: Option<u64>,
    env_budget: Option<u64>,
    file_seed: Option<u64>,
}

impl Settings {
    /// Search node budget for a run, given the flag value if any.
    pub fn budget(&self, flag: Option<u64>) -> u64 {
        flag.or(self.file_budget)
            .or(self.env_budget)
            .unwrap_or(DEFAULT_BUDGET)
    }

    /// RNG seed for a run, given the flag value if any.
    pub fn seed(&self, flag: Option<u64>) -> u64 {
        flag.or(self.file_seed).unwrap_or(DEFAULT_SEED)
    }
}

pub fn resolve(format_flag: Option<Format>, config_path: Option<&Path>) -> Result<Settings> {
    let file = match config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            toml::from_str::<FileConfig>(&text)
                .with_context(|| format!("invalid config file {}", path.display()))?
        }
        None => FileConfig::default(),
    };
    let env_budget = match std::env::var(BUDGET_ENV) {
        Ok(text) => Some(text.trim().parse::<u64>().with_context(|| {
            format!("{BUDGET_ENV} must be a node count, found {text:?}")
        })?),
        Err(std::env::VarError::NotPresent) => None,
        Err(std::env::VarError::NotUnicode(_)) => bail!("{BUDGET_ENV} is not valid UTF-8"),
    };
    let file_format = file.format.as_deref().map(parse_format).transpose()?;
    Ok(Settings {
        format: format_flag.or(file_format).unwrap_or(Format::Json),
        file_budget: file.budget,
        env_budget,
        file_seed: file.seed,
    })
}

fn parse_format(name: &str) -> Result<Format> {
    match name {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        "human" => Ok(Format::Human),
        other => bail!("config file format must be json, csv, or human, found {other:?}"),
    }
}
