//! Run configuration: defaults, optional `key = value` file, flag overrides.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Orientation;

pub const MIN_TOL: f64 = 1e-13;
pub const MAX_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Defaults: integration 1e-12, quadrature 1e-11, closure 1e-6, root 1e-10.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Error per unit step of orbit integration.
    pub integration: f64,
    /// Absolute accuracy of a period.
    pub quadrature: f64,
    /// Relative return mismatch of a closed profile.
    pub closure: f64,
    /// `|T - 2π/n|` for located periodic orbits.
    pub root: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { integration: 1e-12, quadrature: 1e-11, closure: 1e-6, root: 1e-10 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("integration", self.integration),
            ("quadrature", self.quadrature),
            ("closure", self.closure),
            ("root", self.root),
        ] {
            if !(MIN_TOL..=MAX_TOL).contains(&v) {
                return Err(Error::Invalid(format!("{name} tolerance {v:e} outside [{MIN_TOL:e}, {MAX_TOL:e}]")));
            }
        }
        Ok(())
    }

    /// The integrator accepts at most 1e-6.
    pub fn ode(&self) -> f64 {
        self.integration.min(1e-6)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    /// Default sample count for subcommands that take `--samples`.
    pub samples: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub orientation: Orientation,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value.parse().map_err(|_| Error::Invalid(format!("config line {line}: bad value {value:?} for {key}")))
}

impl RunConfig {
    /// Applies `key = value` lines over `self`. Blank lines and lines
    /// starting with `#` are skipped; unknown keys are an error.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("config line {line}: expected key = value")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "tol" => {
                    let v = parse_value(key, value, line)?;
                    self.tolerances.integration = v;
                    self.tolerances.quadrature = v;
                }
                "integration_tol" => self.tolerances.integration = parse_value(key, value, line)?,
                "quad_tol" => self.tolerances.quadrature = parse_value(key, value, line)?,
                "closure_tol" => self.tolerances.closure = parse_value(key, value, line)?,
                "root_tol" => self.tolerances.root = parse_value(key, value, line)?,
                "samples" => self.samples = Some(parse_value(key, value, line)?),
                "jobs" => self.jobs = Some(parse_value(key, value, line)?),
                "out" => self.out = Some(PathBuf::from(value)),
                "format" => {
                    self.format = Format::from_str(value, true)
                        .map_err(|_| Error::Invalid(format!("config line {line}: unknown format {value:?}")))?
                }
                "flip_orientation" => {
                    let flip: bool = parse_value(key, value, line)?;
                    self.orientation = if flip { Orientation::Flipped } else { Orientation::Standard };
                }
                other => return Err(Error::Invalid(format!("config line {line}: unknown key {other:?}"))),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if self.jobs == Some(0) {
            return Err(Error::Invalid("jobs must be at least 1".into()));
        }
        if self.samples == Some(0) {
            return Err(Error::Invalid("samples must be at least 1".into()));
        }
        Ok(())
    }
}
