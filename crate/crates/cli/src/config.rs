use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use qqm_core::dynamics::IotaSpec;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    AlgebraLaws,
    MeasurementInvariants,
    GaugeSweep,
    DegreeConstraint,
    Evolution,
    Oscillator,
    GridMomentum,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::AlgebraLaws,
        ExperimentKind::MeasurementInvariants,
        ExperimentKind::GaugeSweep,
        ExperimentKind::DegreeConstraint,
        ExperimentKind::Evolution,
        ExperimentKind::Oscillator,
        ExperimentKind::GridMomentum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::AlgebraLaws => "algebra_laws",
            ExperimentKind::MeasurementInvariants => "measurement_invariants",
            ExperimentKind::GaugeSweep => "gauge_sweep",
            ExperimentKind::DegreeConstraint => "degree_constraint",
            ExperimentKind::Evolution => "evolution",
            ExperimentKind::Oscillator => "oscillator",
            ExperimentKind::GridMomentum => "grid_momentum",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    fn default_dims(self) -> Vec<usize> {
        match self {
            ExperimentKind::AlgebraLaws => vec![2, 3, 4, 5],
            ExperimentKind::MeasurementInvariants | ExperimentKind::GaugeSweep | ExperimentKind::DegreeConstraint => {
                vec![2, 3, 4]
            }
            ExperimentKind::Evolution => vec![2, 3, 4, 5, 6],
            ExperimentKind::Oscillator => vec![8, 12, 16],
            ExperimentKind::GridMomentum => vec![256],
        }
    }

    fn default_trials(self) -> usize {
        match self {
            ExperimentKind::Evolution => 100,
            ExperimentKind::Oscillator | ExperimentKind::GridMomentum => 1,
            _ => 1000,
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One experiment as read from JSON. Absent fields take per-experiment
/// defaults in [`ExperimentConfig::resolve`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<ExperimentKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Imaginary components `[x, y, z]` of `η`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    /// Mode subsets for the oscillator, e.g. `[[0], [0, 1]]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes: Option<Vec<Vec<usize>>>,
    /// Overrides for named record tolerances.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Evolution only: drive the norm sweep with Hamiltonians outside the
    /// ι-commutant and no superselection guard.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub violate_superselection: bool,
}

/// A validated configuration with every default filled in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolvedConfig {
    pub experiment: ExperimentKind,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub eta: [f64; 3],
    pub omega: f64,
    pub truncation: Option<usize>,
    pub modes: Vec<Vec<usize>>,
    pub tolerances: BTreeMap<String, f64>,
    pub violate_superselection: bool,
    #[serde(skip)]
    pub output_dir: Option<PathBuf>,
}

impl ResolvedConfig {
    pub fn iota(&self) -> IotaSpec {
        IotaSpec::from_components(self.eta).expect("validated in resolve")
    }

    /// The configured tolerance for `name`, or `default`.
    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

fn invalid(prefix: &str, field: &str, message: impl Into<String>) -> CliError {
    CliError::ConfigInvalid { field: format!("{prefix}{field}"), message: message.into() }
}

impl ExperimentConfig {
    pub fn from_path(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::ConfigInvalid { field: e.to_string(), message: "parse error".into() })
    }

    /// Fills defaults and validates. `prefix` locates this config inside a
    /// larger file for error messages.
    pub fn resolve(&self, default_seed: u64, prefix: &str) -> CliResult<ResolvedConfig> {
        let experiment = self.experiment.ok_or_else(|| invalid(prefix, "experiment", "missing"))?;
        let dims = self.dims.clone().unwrap_or_else(|| experiment.default_dims());
        if dims.is_empty() {
            return Err(invalid(prefix, "dims", "must not be empty"));
        }
        if let Some(i) = dims.iter().position(|&d| d == 0) {
            return Err(invalid(prefix, &format!("dims[{i}]"), "must be positive"));
        }
        let trials = self.trials.unwrap_or_else(|| experiment.default_trials());
        if trials == 0 {
            return Err(invalid(prefix, "trials", "must be positive"));
        }
        let eta = self.eta.unwrap_or([1.0, 0.0, 0.0]);
        IotaSpec::from_components(eta).map_err(|e| invalid(prefix, "eta", e.to_string()))?;
        let omega = self.omega.unwrap_or(1.0);
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(invalid(prefix, "omega", "must be positive and finite"));
        }
        let modes = self.modes.clone().unwrap_or_else(|| vec![vec![0], vec![0, 1]]);
        for (i, m) in modes.iter().enumerate() {
            let mut sorted = m.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if m.is_empty() || m.len() > 2 || sorted.len() != m.len() || m.iter().any(|&a| a > 3) {
                return Err(invalid(prefix, &format!("modes[{i}]"), "one or two distinct components in 0..=3"));
            }
        }
        if let Some(t) = self.truncation {
            if t < qqm_core::oscillator::MIN_TRUNCATION {
                return Err(invalid(prefix, "truncation", format!("must be at least {}", qqm_core::oscillator::MIN_TRUNCATION)));
            }
        }
        if experiment == ExperimentKind::Oscillator && self.truncation.is_none() {
            if let Some(i) = dims.iter().position(|&d| d < qqm_core::oscillator::MIN_TRUNCATION) {
                return Err(invalid(prefix, &format!("dims[{i}]"), "oscillator truncations must be at least 8"));
            }
        }
        if experiment == ExperimentKind::GridMomentum {
            if let Some(i) = dims.iter().position(|&d| d < 16) {
                return Err(invalid(prefix, &format!("dims[{i}]"), "grid sizes must be at least 16"));
            }
        }
        for (name, tol) in &self.tolerances {
            if !(*tol >= 0.0) {
                return Err(invalid(prefix, &format!("tolerances.{name}"), "must be a nonnegative number"));
            }
        }
        Ok(ResolvedConfig {
            experiment,
            seed: self.seed.unwrap_or(default_seed),
            dims,
            trials,
            eta,
            omega,
            truncation: self.truncation,
            modes,
            tolerances: self.tolerances.clone(),
            violate_superselection: self.violate_superselection,
            output_dir: self.output_dir.clone(),
        })
    }
}

/// A list of experiments sharing one seed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub experiments: Vec<ExperimentConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn from_path(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::ConfigInvalid { field: e.to_string(), message: "parse error".into() })
    }
}
