use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use qdamp_core::classical::OscillatorParams;
use qdamp_core::dissipative::ModeSpec;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Verify,
    Evolve,
    Classical,
    Squeeze,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            t_start: 0.0,
            t_end: 10.0,
            steps: 100,
        }
    }
}

impl TimeGrid {
    /// `t_start + k (t_end - t_start) / steps`, `k = 0..=steps`.
    pub fn points(&self) -> Vec<f64> {
        let h = (self.t_end - self.t_start) / self.steps as f64;
        (0..=self.steps)
            .map(|k| {
                if k == self.steps {
                    self.t_end
                } else {
                    self.t_start + k as f64 * h
                }
            })
            .collect()
    }
}

/// Contents of the `--config` file. Every field has a default; unknown keys
/// are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// When present, must match the subcommand on the command line.
    pub command: Option<CommandKind>,
    pub modes: Vec<ModeSpec>,
    pub time_grid: TimeGrid,
    /// Dense dimension; overrides the per-check defaults.
    pub dim: Option<usize>,
    /// Tolerance; overrides the per-check defaults.
    pub tolerance: Option<f64>,
    pub output_path: Option<PathBuf>,
    /// Defaults to JSON for `verify` and CSV otherwise.
    pub output_format: Option<Format>,
    pub oscillator: OscillatorParams,
    /// Integration step of `classical`.
    pub dt: f64,
    pub zeta_grid: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            modes: vec![ModeSpec::new("k0", 1.0, 1.0).expect("valid default mode")],
            time_grid: TimeGrid::default(),
            dim: None,
            tolerance: None,
            output_path: None,
            output_format: None,
            oscillator: OscillatorParams::default(),
            dt: 1e-3,
            zeta_grid: vec![-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0],
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        let g = &self.time_grid;
        if g.steps < 1 {
            return bad("time_grid.steps must be at least 1".into());
        }
        if !(g.t_start >= 0.0 && g.t_end >= g.t_start && g.t_end.is_finite()) {
            return bad(format!(
                "time_grid needs 0 <= t_start <= t_end, got ({}, {})",
                g.t_start, g.t_end
            ));
        }
        if let Some(tol) = self.tolerance {
            if !(tol > 0.0) || !tol.is_finite() {
                return bad(format!("tolerance must be positive, got {tol}"));
            }
        }
        if self.dim == Some(0) {
            return bad("dim must be at least 1".into());
        }
        if self.modes.is_empty() {
            return bad("modes must not be empty".into());
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if self.zeta_grid.iter().any(|z| !z.is_finite()) {
            return bad("zeta_grid entries must be finite".into());
        }
        self.oscillator
            .validate()
            .map_err(|e| CliError::Config(format!("oscillator: {e}")))
    }
}
