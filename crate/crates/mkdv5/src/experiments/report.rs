//! Structured experiment reports: full configuration echo, per-run records
//! with units and grids, fitted exponents, and pass/fail checks. Reports are
//! reproducible bit-for-bit from (config, seed) except for wall-clock
//! timings, which are excluded from the canonical form.

use super::fit::SlopeFit;
use crate::io::config::RunConfig;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// A measured number together with its unit and the grid it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub value: f64,
    pub unit: String,
    pub grid: String,
}

impl Measurement {
    pub fn new(value: f64, unit: &str, grid: &str) -> Self {
        Measurement {
            value,
            unit: unit.to_string(),
            grid: grid.to_string(),
        }
    }

    /// Dimensionless quantity (ratios, slopes, counts).
    pub fn dimensionless(value: f64, grid: &str) -> Self {
        Measurement::new(value, "1", grid)
    }
}

/// One run of a sweep: parameters plus measurements, keys sorted for stable
/// column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub label: String,
    pub params: BTreeMap<String, f64>,
    pub measurements: BTreeMap<String, Measurement>,
}

impl RunRecord {
    pub fn new(label: impl Into<String>) -> Self {
        RunRecord {
            label: label.into(),
            params: BTreeMap::new(),
            measurements: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn measure(mut self, key: &str, m: Measurement) -> Self {
        self.measurements.insert(key.to_string(), m);
        self
    }
}

/// A named pass/fail assertion with its threshold spelled out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub experiment: String,
    pub seed: u64,
    pub config_echo: RunConfig,
    pub records: Vec<RunRecord>,
    pub fits: Vec<SlopeFit>,
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
    /// All checks passed (experiments with no checks count as passed).
    pub passed: bool,
    /// Wall-clock timings; informational only, excluded from the canonical
    /// numerics used by the determinism guarantee.
    pub timings_ms: BTreeMap<String, f64>,
}

impl ExperimentReport {
    pub fn new(experiment: &str, config: &RunConfig) -> Self {
        ExperimentReport {
            schema_version: REPORT_SCHEMA_VERSION,
            experiment: experiment.to_string(),
            seed: config.seed,
            config_echo: config.clone(),
            records: Vec::new(),
            fits: Vec::new(),
            checks: Vec::new(),
            warnings: Vec::new(),
            passed: true,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn push_check(&mut self, check: CheckResult) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    /// Canonical JSON of everything except timings: two runs with the same
    /// (config, seed) must produce identical canonical forms.
    pub fn canonical_numerics(&self) -> String {
        let mut copy = self.clone();
        copy.timings_ms.clear();
        serde_json::to_string(&copy).expect("report serializes")
    }
}
