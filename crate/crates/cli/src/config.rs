//! Optional TOML configuration: resource caps, worker count, output
//! directory. Command-line flags override anything read here.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use partcert_core::Limits;
use serde::Deserialize;

/// Environment variable naming a config file when `--config` is absent.
pub const CONFIG_ENV: &str = "PARTCERT_CONFIG";

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub limits: Limits,
    pub workers: Option<usize>,
    pub output_dir: Option<PathBuf>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config> {
        Ok(toml::from_str(text)?)
    }

    fn read(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Config::from_toml(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// `flag` if given, else the file named by the environment, else defaults.
    pub fn load(flag: Option<&Path>) -> Result<Config> {
        if let Some(path) = flag {
            return Config::read(path);
        }
        match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Config::read(Path::new(&path)),
            _ => Ok(Config::default()),
        }
    }
}
