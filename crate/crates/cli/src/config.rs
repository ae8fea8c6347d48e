use std::path::Path;

use serde::Deserialize;

use crate::commands::CliError;
use crate::Format;

/// Defaults read from `--config`. Command-line flags win over these.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub k: Option<u32>,
    pub a: Option<u32>,
    pub max_n: Option<usize>,
    pub order: Option<usize>,
    pub format: Option<Format>,
    #[serde(default)]
    pub sweep: Vec<Sweep>,
}

/// One verification run of a sweep; missing fields fall back to the
/// top-level defaults.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub identity: String,
    pub k: Option<u32>,
    pub a: Option<u32>,
    #[serde(alias = "max_n", alias = "order")]
    pub bound: Option<usize>,
}

pub fn load(path: Option<&Path>) -> Result<Config, CliError> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}
