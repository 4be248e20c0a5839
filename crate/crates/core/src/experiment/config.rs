use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ExperimentError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    EntropySweep,
    EfficiencySweep,
    CollapseCheck,
    Clicks,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::EntropySweep => "entropy-sweep",
            Mode::EfficiencySweep => "efficiency-sweep",
            Mode::CollapseCheck => "collapse-check",
            Mode::Clicks => "clicks",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Experiment description read from JSON. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default = "default_mass")]
    pub m: f64,
    /// Packet widths ξ, in the same units as `m`.
    pub xi_list: Vec<f64>,
    pub v_list: Vec<f64>,
    /// Real ket overlaps `⟨↖|↗⟩` for collapse-check.
    #[serde(default = "default_overlaps")]
    pub overlap_list: Vec<f64>,
    #[serde(default = "default_quad_order")]
    pub quad_order: usize,
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

fn default_mass() -> f64 {
    1.0
}

fn default_overlaps() -> Vec<f64> {
    vec![0.0, 0.3, 0.7]
}

fn default_quad_order() -> usize {
    24
}

fn default_samples() -> u64 {
    1_000_000
}

fn default_seed() -> u64 {
    0xC0FFEE
}

/// Largest per-axis order; sweeps also evaluate twice this.
pub const MAX_QUAD_ORDER: usize = 128;

impl ExperimentConfig {
    pub fn new(xi_list: Vec<f64>, v_list: Vec<f64>) -> Self {
        Self {
            mode: None,
            m: default_mass(),
            xi_list,
            v_list,
            overlap_list: default_overlaps(),
            quad_order: default_quad_order(),
            samples: default_samples(),
            seed: default_seed(),
            output_path: None,
            format: Format::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ExperimentError> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, ExperimentError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |msg: String| Err(ExperimentError::Config(msg));
        if !(self.m.is_finite() && self.m > 0.0) {
            return bad(format!("m must be positive, got {}", self.m));
        }
        if self.xi_list.is_empty() || self.v_list.is_empty() {
            return bad("xi_list and v_list must be non-empty".into());
        }
        if let Some(xi) = self.xi_list.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return bad(format!("every xi must be positive, got {xi}"));
        }
        if let Some(v) = self.v_list.iter().find(|v| !(v.is_finite() && v.abs() < 1.0)) {
            return bad(format!("every v must lie in (-1, 1), got {v}"));
        }
        if let Some(c) = self.overlap_list.iter().find(|c| !(0.0..1.0).contains(*c)) {
            return bad(format!("every overlap must lie in [0, 1), got {c}"));
        }
        if !(8..=MAX_QUAD_ORDER).contains(&self.quad_order) {
            return bad(format!("quad_order must be in 8..={MAX_QUAD_ORDER}, got {}", self.quad_order));
        }
        if self.samples == 0 {
            return bad("samples must be at least 1".into());
        }
        Ok(())
    }
}
