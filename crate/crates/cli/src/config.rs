//! `key=value` run configuration.

use std::fmt;
use std::path::{Path, PathBuf};

use clusterchar::Settings;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub rng_seed: u64,
    pub sample_bound: i64,
    pub retries: usize,
    pub enumeration_cap: u64,
    pub cache_path: Option<PathBuf>,
    pub output: Output,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = Settings::default();
        RunConfig {
            rng_seed: s.rng_seed,
            sample_bound: s.sample_bound,
            retries: s.retries,
            enumeration_cap: s.enumeration_cap,
            cache_path: None,
            output: Output::Text,
        }
    }
}

fn positive<T: std::str::FromStr + PartialOrd + Default>(key: &str, value: &str) -> Result<T, ConfigError> {
    match value.parse::<T>() {
        Ok(v) if v > T::default() => Ok(v),
        _ => Err(ConfigError(format!("`{key}` must be a positive integer, got `{value}`"))),
    }
}

impl RunConfig {
    /// Applies `key=value` lines on top of the defaults. Blank lines and
    /// `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "rng_seed" => cfg.rng_seed = positive(key, value)?,
                "sample_bound" => cfg.sample_bound = positive(key, value)?,
                "retries" => cfg.retries = positive(key, value)?,
                "enumeration_cap" => cfg.enumeration_cap = positive(key, value)?,
                "cache_path" => cfg.cache_path = Some(PathBuf::from(value)),
                "output" => {
                    cfg.output = match value {
                        "text" => Output::Text,
                        "json" => Output::Json,
                        _ => return Err(ConfigError(format!("`output` must be text or json, got `{value}`"))),
                    }
                }
                _ => return Err(ConfigError(format!("line {}: unknown key `{key}`", lineno + 1))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn settings(&self) -> Settings {
        Settings {
            rng_seed: self.rng_seed,
            sample_bound: self.sample_bound,
            retries: self.retries,
            enumeration_cap: self.enumeration_cap,
            ..Settings::default()
        }
    }
}
