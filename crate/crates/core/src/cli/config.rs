//! Run configuration from flags and `key=value` files.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::closed_forms::{Branch, OscillatorParams};
use crate::operators::{default_sector, DEFAULT_DIM, MIN_DIM};
use crate::verification::{uniform_grid, DEFAULT_GRID_POINTS};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

/// Every field optional; flags and config files each produce one of these.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartialConfig {
    pub omega: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub z_min: Option<f64>,
    pub z_max: Option<f64>,
    pub steps: Option<usize>,
    pub branch: Option<Branch>,
    pub dim: Option<usize>,
    pub sector: Option<usize>,
    pub output_path: Option<String>,
    pub format: Option<Format>,
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| CliError::Config(format!("{key}: cannot parse '{value}': {e}")))
}

impl PartialConfig {
    /// Parses `key=value` lines. `#` starts a comment; keys may use `-` or `_`.
    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        let mut seen: Vec<String> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key=value, got '{line}'", lineno + 1))
            })?;
            let key = key.trim().replace('-', "_");
            if seen.contains(&key) {
                return Err(CliError::Config(format!("line {}: duplicate key '{key}'", lineno + 1)));
            }
            cfg.set(&key, value.trim())?;
            seen.push(key);
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "omega" => self.omega = Some(parse_value(key, value)?),
            "alpha" => self.alpha = Some(parse_value(key, value)?),
            "beta" => self.beta = Some(parse_value(key, value)?),
            "z_min" => self.z_min = Some(parse_value(key, value)?),
            "z_max" => self.z_max = Some(parse_value(key, value)?),
            "steps" => self.steps = Some(parse_value(key, value)?),
            "branch" => self.branch = Some(parse_value(key, value)?),
            "dim" => self.dim = Some(parse_value(key, value)?),
            "sector" => self.sector = Some(parse_value(key, value)?),
            "out" => self.output_path = Some(value.to_string()),
            "format" => self.format = Some(parse_value(key, value)?),
            other => return Err(CliError::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: Self) -> Self {
        Self {
            omega: self.omega.or(base.omega),
            alpha: self.alpha.or(base.alpha),
            beta: self.beta.or(base.beta),
            z_min: self.z_min.or(base.z_min),
            z_max: self.z_max.or(base.z_max),
            steps: self.steps.or(base.steps),
            branch: self.branch.or(base.branch),
            dim: self.dim.or(base.dim),
            sector: self.sector.or(base.sector),
            output_path: self.output_path.or(base.output_path),
            format: self.format.or(base.format),
        }
    }
}

/// A complete, validated run configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    pub z_min: f64,
    pub z_max: f64,
    pub steps: usize,
    pub branch: Branch,
    pub dim: usize,
    pub sector: usize,
    pub output_path: String,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let demo = OscillatorParams::demo();
        Self {
            omega: demo.omega(),
            alpha: demo.alpha(),
            beta: demo.beta(),
            z_min: -1.0,
            z_max: 1.0,
            steps: DEFAULT_GRID_POINTS,
            branch: Branch::Standard,
            dim: DEFAULT_DIM,
            sector: default_sector(DEFAULT_DIM),
            output_path: "-".to_string(),
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    /// Fills unset fields with defaults (sector defaults to `dim/4`) and validates.
    pub fn resolve(partial: PartialConfig) -> Result<Self, CliError> {
        let d = Self::default();
        let dim = partial.dim.unwrap_or(d.dim);
        let cfg = Self {
            omega: partial.omega.unwrap_or(d.omega),
            alpha: partial.alpha.unwrap_or(d.alpha),
            beta: partial.beta.unwrap_or(d.beta),
            z_min: partial.z_min.unwrap_or(d.z_min),
            z_max: partial.z_max.unwrap_or(d.z_max),
            steps: partial.steps.unwrap_or(d.steps),
            branch: partial.branch.unwrap_or(d.branch),
            dim,
            sector: partial.sector.unwrap_or_else(|| default_sector(dim)),
            output_path: partial.output_path.unwrap_or(d.output_path),
            format: partial.format.unwrap_or(d.format),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        for (name, z) in [("z_min", self.z_min), ("z_max", self.z_max)] {
            if !(-1.0..=1.0).contains(&z) {
                return bad(format!("{name} = {z} is outside [-1, 1]"));
            }
        }
        if self.z_min > self.z_max {
            return bad(format!("z_min = {} exceeds z_max = {}", self.z_min, self.z_max));
        }
        if self.steps == 0 {
            return bad("steps must be at least 1".into());
        }
        if self.dim < MIN_DIM {
            return bad(format!("dim = {} is below the minimum {MIN_DIM}", self.dim));
        }
        if self.sector < 2 || self.sector > self.dim / 2 {
            return bad(format!(
                "sector = {} must lie in [2, dim/2 = {}]",
                self.sector,
                self.dim / 2
            ));
        }
        if self.output_path.is_empty() {
            return bad("out must not be empty".into());
        }
        self.params().map(|_| ())
    }

    pub fn params(&self) -> Result<OscillatorParams, CliError> {
        OscillatorParams::new(self.omega, self.alpha, self.beta)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn grid(&self) -> Vec<f64> {
        uniform_grid(self.z_min, self.z_max, self.steps)
    }
}
