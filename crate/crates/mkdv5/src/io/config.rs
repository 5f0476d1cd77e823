//! Run configuration: human-editable TOML with defaults for every key,
//! unknown keys rejected, and dotted-path overrides for scan automation.

use crate::evolution::{EquationCoeffs, NlsSign};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("config validation failed at `{key}`: {reason}")]
    Invalid { key: String, reason: String },
    #[error("override `{0}` is not of the form key.path=value")]
    BadOverride(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Validate,
    Approx,
    Illposed,
    Counterexample,
    Resonance,
    Suite,
}

impl Default for ExperimentKind {
    fn default() -> Self {
        ExperimentKind::Suite
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Which experiment to run (CLI subcommands override this).
    pub experiment: ExperimentKind,
    /// Seed for every randomized component; reports are bit-reproducible
    /// given (config, seed).
    pub seed: u64,
    /// Output directory for reports and plot data (env MKDV5_OUT_DIR wins).
    pub output_dir: String,
    /// Modulation exponent standing in for "1/2 < b ≤ 1/2 + ε".
    pub b_exponent: f64,
    pub approximation: ApproximationConfig,
    pub illposedness: IllposednessConfig,
    pub counterexample: CounterexampleConfig,
    pub validation: ValidationConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            experiment: ExperimentKind::default(),
            seed: 20240716,
            output_dir: "out".to_string(),
            b_exponent: 0.51,
            approximation: ApproximationConfig::default(),
            illposedness: IllposednessConfig::default(),
            counterexample: CounterexampleConfig::default(),
            validation: ValidationConfig::default(),
        }
    }
}

/// Approximation-quality experiment: solve the envelope equation, transport
/// the packet, evolve the full equation from the packet's initial data, and
/// fit the decay of sup_t ‖U_num − U_ap‖_{H^{3/4}} against N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ApproximationConfig {
    pub n_sweep: Vec<f64>,
    pub eps: f64,
    /// Gaussian envelope width σ.
    pub envelope_width: f64,
    /// Envelope window L_y; grid designed so the packet box spans exactly
    /// one envelope period: L_x = L_y·√(10N³).
    pub envelope_window: f64,
    pub envelope_points: usize,
    /// Time step (dyadic so sample times land exactly on steps).
    pub dt: f64,
    pub t_final: f64,
    /// Number of measurement times, uniformly spaced over [0, t_final].
    pub sample_count: usize,
    pub coeffs: EquationCoeffs,
    /// Resolved band of the packet grid, in units of N.
    pub band_factor: f64,
    /// The acceptance threshold on the fitted slope.
    pub slope_threshold: f64,
}

impl Default for ApproximationConfig {
    fn default() -> Self {
        ApproximationConfig {
            n_sweep: vec![8.0, 16.0, 32.0],
            eps: 0.05,
            envelope_width: 0.6,
            envelope_window: 8.0,
            envelope_points: 128,
            dt: 1.0 / 2048.0,
            t_final: 1.0,
            sample_count: 17,
            coeffs: EquationCoeffs::cubic_derivative(),
            band_factor: 3.3,
            slope_threshold: -2.0,
        }
    }
}

/// Uniform-continuity failure experiment: two packet solutions with nearby
/// amplitudes, measured in the rescaled Hˢ norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IllposednessConfig {
    pub n_carrier: f64,
    pub s: f64,
    /// Target rescaled Hˢ size of both solutions.
    pub eps: f64,
    pub delta_over_eps: f64,
    /// Plateau fraction of the envelope window; 1.0 is the dispersionless
    /// (constant-envelope) limit where the phase-rotation oracle is exact.
    pub plateau_fraction: f64,
    /// Edge ramp width when plateau_fraction < 1.
    pub plateau_edge_width: f64,
    /// Envelope window for finite plateaus (the constant case derives its
    /// own window from the packet box).
    pub envelope_window: f64,
    pub envelope_points: usize,
    pub amplification_target: f64,
    /// Simulate to t₁₀ × this factor.
    pub horizon_safety: f64,
    /// Feasibility cap on inner simulated time; beyond it the run is
    /// reported inconclusive with the required horizon.
    pub max_inner_time: f64,
    pub dt: f64,
    pub sample_count: usize,
    /// Declared outer horizon for the t*/λ⁵ ≤ T validation.
    pub t_outer: f64,
    pub nls_sign: NlsSign,
    /// The δ = 0 control must stay below this multiple of ε.
    pub control_tolerance: f64,
}

impl Default for IllposednessConfig {
    fn default() -> Self {
        IllposednessConfig {
            n_carrier: 16.0,
            s: -0.2,
            eps: 0.15,
            delta_over_eps: 1e-2,
            plateau_fraction: 1.0,
            plateau_edge_width: 1.0,
            envelope_window: 16.0,
            envelope_points: 64,
            amplification_target: 10.0,
            horizon_safety: 1.3,
            max_inner_time: 64.0,
            dt: 1.0 / 1024.0,
            sample_count: 64,
            t_outer: 1.0,
            nls_sign: NlsSign::PlusCubic,
            control_tolerance: 1e-6,
        }
    }
}

/// Sharp-example scan: trilinear ratio over a dyadic N sweep for several s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CounterexampleConfig {
    /// Dyadic exponent range: N = 2^min … 2^max.
    pub n_exp_min: u32,
    pub n_exp_max: u32,
    pub s_values: Vec<f64>,
    pub slope_tolerance: f64,
    /// Discretization of the sheared convolutions.
    pub pair_columns: usize,
    pub inner_nodes: usize,
    pub pair_nu_cells: usize,
    pub out_columns: usize,
    pub out_mu_cells: usize,
}

impl Default for CounterexampleConfig {
    fn default() -> Self {
        let t = crate::multiplier::TrilinearOptions::default();
        CounterexampleConfig {
            n_exp_min: 4,
            n_exp_max: 9,
            s_values: vec![0.0, 0.25, 0.5, 0.75],
            slope_tolerance: 0.15,
            pair_columns: t.n_pair_columns,
            inner_nodes: t.n_d,
            pair_nu_cells: t.n_nu_pair,
            out_columns: t.n_out_columns,
            out_mu_cells: t.n_mu_out,
        }
    }
}

impl CounterexampleConfig {
    pub fn trilinear_options(&self) -> crate::multiplier::TrilinearOptions {
        crate::multiplier::TrilinearOptions {
            n_pair_columns: self.pair_columns,
            n_d: self.inner_nodes,
            n_nu_pair: self.pair_nu_cells,
            n_out_columns: self.out_columns,
            n_mu_out: self.out_mu_cells,
        }
    }
}

/// Validation-suite knobs (oracle battery tolerances).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ValidationConfig {
    pub resonance_samples: usize,
    pub block_trials: usize,
    /// Convergence study base step; the negative control multiplies it by 10.
    pub convergence_dt: f64,
    pub min_convergence_order: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            resonance_samples: 100_000,
            block_trials: 4,
            convergence_dt: 1e-4,
            min_convergence_order: 3.8,
        }
    }
}

/// Parse a config file (empty file ⇒ all defaults); unknown keys are errors.
pub fn parse_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig =
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    validate(&config)?;
    Ok(config)
}

/// Apply `--set key.path=value` overrides on top of the parsed TOML, then
/// re-validate. Values are parsed as TOML (numbers, strings, arrays).
pub fn apply_overrides(config: &RunConfig, overrides: &[String]) -> Result<RunConfig, ConfigError> {
    if overrides.is_empty() {
        return Ok(config.clone());
    }
    let mut value =
        toml::Value::try_from(config).map_err(|e| ConfigError::Parse(e.to_string()))?;
    for item in overrides {
        let (key, raw) = item
            .split_once('=')
            .ok_or_else(|| ConfigError::BadOverride(item.clone()))?;
        // parse the value as a one-entry TOML document so numbers, booleans,
        // arrays and quoted strings all work; bare words fall back to strings
        let parsed = parse_toml_value(raw.trim())
            .ok_or_else(|| ConfigError::BadOverride(item.clone()))?;
        set_path(&mut value, key.trim(), parsed)
            .ok_or_else(|| ConfigError::BadOverride(item.clone()))?;
    }
    let config: RunConfig = value
        .try_into()
        .map_err(|e: toml::de::Error| ConfigError::Parse(e.to_string()))?;
    validate(&config)?;
    Ok(config)
}

fn parse_toml_value(raw: &str) -> Option<toml::Value> {
    let direct: Result<toml::Table, _> = format!("v = {raw}").parse();
    if let Ok(table) = direct {
        return table.get("v").cloned();
    }
    let quoted: Result<toml::Table, _> = format!("v = \"{raw}\"").parse();
    quoted.ok().and_then(|t| t.get("v").cloned())
}

fn set_path(root: &mut toml::Value, dotted: &str, new: toml::Value) -> Option<()> {
    let mut cur = root;
    let parts: Vec<&str> = dotted.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let table = cur.as_table_mut()?;
        if i + 1 == parts.len() {
            table.insert(part.to_string(), new);
            return Some(());
        }
        cur = table
            .entry(part.to_string())
            .or_insert(toml::Value::Table(Default::default()));
    }
    None
}

/// Validation runs before any compute; every rejection names the key.
pub fn validate(config: &RunConfig) -> Result<(), ConfigError> {
    let positive = |key: &str, v: f64| -> Result<(), ConfigError> {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(ConfigError::Invalid {
                key: key.to_string(),
                reason: format!("must be positive and finite, got {v}"),
            })
        }
    };
    if !(config.b_exponent > 0.5 && config.b_exponent <= 1.0) {
        return Err(ConfigError::Invalid {
            key: "b_exponent".into(),
            reason: format!("must satisfy 1/2 < b <= 1, got {}", config.b_exponent),
        });
    }

    let a = &config.approximation;
    for &n in &a.n_sweep {
        positive("approximation.n_sweep", n)?;
    }
    positive("approximation.eps", a.eps)?;
    positive("approximation.dt", a.dt)?;
    positive("approximation.t_final", a.t_final)?;
    positive("approximation.envelope_width", a.envelope_width)?;
    positive("approximation.envelope_window", a.envelope_window)?;
    if a.band_factor < 3.0 {
        return Err(ConfigError::Invalid {
            key: "approximation.band_factor".into(),
            reason: "the packet's cube needs at least band 3N resolved".into(),
        });
    }

    let i = &config.illposedness;
    if config.experiment == ExperimentKind::Illposed
        && !crate::wavepacket::WavePacketParams::in_theorem_range(i.s)
    {
        return Err(ConfigError::Invalid {
            key: "illposedness.s".into(),
            reason: format!(
                "s = {} outside the admissible range −7/24 < s < 3/4",
                i.s
            ),
        });
    }
    positive("illposedness.n_carrier", i.n_carrier)?;
    positive("illposedness.eps", i.eps)?;
    if !(i.delta_over_eps > 0.0 && i.delta_over_eps < 0.5) {
        return Err(ConfigError::Invalid {
            key: "illposedness.delta_over_eps".into(),
            reason: format!("need 0 < delta/eps << 1, got {}", i.delta_over_eps),
        });
    }
    if !(i.plateau_fraction > 0.0 && i.plateau_fraction <= 1.0) {
        return Err(ConfigError::Invalid {
            key: "illposedness.plateau_fraction".into(),
            reason: "must lie in (0, 1]".into(),
        });
    }
    positive("illposedness.dt", i.dt)?;
    positive("illposedness.t_outer", i.t_outer)?;

    let c = &config.counterexample;
    if c.n_exp_min < 1 || c.n_exp_max < c.n_exp_min {
        return Err(ConfigError::Invalid {
            key: "counterexample.n_exp_min".into(),
            reason: "need 1 <= n_exp_min <= n_exp_max".into(),
        });
    }
    for &s in &c.s_values {
        if !(-0.5..=0.75).contains(&s) {
            return Err(ConfigError::Invalid {
                key: "counterexample.s_values".into(),
                reason: format!("scan exponent {s} outside [-1/2, 3/4]"),
            });
        }
    }
    positive("validation.convergence_dt", config.validation.convergence_dt)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_yields_defaults() {
        let config = parse_config_str("").unwrap();
        assert_eq!(config, RunConfig::default());
    }

    #[test]
    fn unknown_key_is_rejected_by_name() {
        let err = parse_config_str("foo = 1\n").unwrap_err();
        match err {
            ConfigError::Parse(msg) => assert!(msg.contains("foo"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_range_s_with_illposed_experiment_cites_range() {
        let text = "experiment = \"illposed\"\n[illposedness]\ns = 0.9\n";
        let err = parse_config_str(text).unwrap_err();
        match err {
            ConfigError::Invalid { key, reason } => {
                assert_eq!(key, "illposedness.s");
                assert!(reason.contains("−7/24 < s < 3/4"), "{reason}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn overrides_reach_nested_keys() {
        let base = RunConfig::default();
        let out = apply_overrides(
            &base,
            &[
                "approximation.eps=0.02".to_string(),
                "seed=7".to_string(),
                "approximation.n_sweep=[8.0, 16.0]".to_string(),
            ],
        )
        .unwrap();
        assert_eq!(out.approximation.eps, 0.02);
        assert_eq!(out.seed, 7);
        assert_eq!(out.approximation.n_sweep, vec![8.0, 16.0]);
    }

    #[test]
    fn bad_override_reports_offender() {
        let base = RunConfig::default();
        let err = apply_overrides(&base, &["no_equals_sign".to_string()]).unwrap_err();
        assert!(matches!(err, ConfigError::BadOverride(_)));
    }

    #[test]
    fn toml_round_trip_is_lossless() {
        let config = RunConfig::default();
        let text = toml::to_string(&config).unwrap();
        let back: RunConfig = toml::from_str(&text).unwrap();
        assert_eq!(config, back);
    }
}
