use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::config::ResolvedConfig;
use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Passes when `max_deviation <= tolerance`.
    UpperBound,
    /// Passes when `max_deviation > tolerance`.
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub kind: Bound,
    pub pass: bool,
}

impl Record {
    pub fn upper(name: impl Into<String>, max_deviation: f64, tolerance: f64) -> Self {
        Record { name: name.into(), max_deviation, tolerance, kind: Bound::UpperBound, pass: max_deviation <= tolerance }
    }

    pub fn lower(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Record { name: name.into(), max_deviation: value, tolerance: threshold, kind: Bound::LowerBound, pass: value > threshold }
    }

    /// A yes/no check stored as deviation 0 (holds) or 1 (fails).
    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Record::upper(name, if holds { 0.0 } else { 1.0 }, 0.0)
    }
}

/// Running maximum of a deviation; NaN is sticky so it cannot hide.
#[derive(Clone, Copy, Debug, Default)]
pub struct MaxDev(pub f64);

impl MaxDev {
    pub fn push(&mut self, v: f64) {
        if v.is_nan() || self.0.is_nan() {
            self.0 = f64::NAN;
        } else if v > self.0 {
            self.0 = v;
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub version: String,
    pub config: ResolvedConfig,
    pub records: Vec<Record>,
    pub pass: bool,
    pub wall_time_ms: u64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl Report {
    pub fn new(config: ResolvedConfig, records: Vec<Record>, wall_time_ms: u64) -> Self {
        let pass = records.iter().all(|r| r.pass);
        Report {
            experiment: config.experiment.name().to_string(),
            version: VERSION.to_string(),
            config,
            records,
            pass,
            wall_time_ms,
            timestamp: now(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        write_json(path, self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub index: usize,
    pub experiment: String,
    pub seed: u64,
    pub output_dir: String,
    pub pass: bool,
    pub failed_records: Vec<String>,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub version: String,
    pub seed: u64,
    pub entries: Vec<SuiteEntry>,
    pub pass: bool,
    pub wall_time_ms: u64,
    pub timestamp: u64,
}

impl Summary {
    pub fn new(seed: u64, entries: Vec<SuiteEntry>, wall_time_ms: u64) -> Self {
        let pass = entries.iter().all(|e| e.pass);
        Summary { version: VERSION.to_string(), seed, entries, pass, wall_time_ms, timestamp: now() }
    }
}

pub fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}
