//! Flat `key = value` configuration files.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

const KNOWN_KEYS: &[&str] = &[
    "alpha",
    "delta",
    "method",
    "pol",
    "tol",
    "max_modes",
    "initial_modes",
    "beta_max_factor",
    "max_panels",
    "quad_order",
    "radius_a",
    "length",
    "threads",
    "json",
    "alphas",
    "deltas",
    "alpha_min",
    "alpha_max",
    "delta_max",
    "points",
    "cuts",
    "min_cut",
    "max_cut",
    "tols",
];

/// Parsed configuration; blank lines and `#` comments are ignored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::InvalidConfig(format!(
                    "line {}: expected key = value",
                    i + 1
                )));
            };
            let key = k.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "line {}: unknown key `{key}`",
                    i + 1
                )));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The flag value if given, else the parsed file value.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| Error::InvalidConfig(format!("bad value `{v}` for `{key}`")))
            })
            .transpose()
    }

    pub fn pick_list(&self, flag: Option<Vec<f64>>, key: &str) -> Result<Option<Vec<f64>>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.get(key)
            .map(|v| parse_list(v).map_err(|m| Error::InvalidConfig(format!("`{key}`: {m}"))))
            .transpose()
    }

    pub fn flag(&self, flag: bool, key: &str) -> Result<bool> {
        Ok(flag || self.pick::<bool>(None, key)?.unwrap_or(false))
    }
}

/// Comma-separated list of reals.
pub fn parse_list(text: &str) -> std::result::Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{}` is not a number", s.trim()))
        })
        .collect()
}
