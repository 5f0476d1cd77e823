//! Sharpness scan: the trilinear ratio of the thin-indicator example over a
//! dyadic carrier sweep, for several Sobolev exponents. The ratio grows like
//! N^{2(3/4−s)}, flattening exactly at s = 3/4.

use super::report::{CheckResult, ExperimentReport, Measurement, RunRecord};
use super::{fit_log2_slope, ExperimentError};
use crate::io::config::RunConfig;
use crate::multiplier::trilinear_ratio;
use std::time::Instant;

pub fn run_counterexample_scan(config: &RunConfig) -> Result<ExperimentReport, ExperimentError> {
    let cfg = &config.counterexample;
    let mut report = ExperimentReport::new("counterexample", config);
    if cfg.s_values.is_empty() || cfg.n_exp_max < cfg.n_exp_min {
        report.warn("empty scan: nothing to run");
        return Ok(report);
    }
    let opts = cfg.trilinear_options();
    let b = config.b_exponent;

    for &s in &cfg.s_values {
        let started = Instant::now();
        let mut points = Vec::new();
        for k in cfg.n_exp_min..=cfg.n_exp_max {
            let n = 2f64.powi(k as i32);
            let r = trilinear_ratio(n, s, b, &opts)
                .map_err(|e| ExperimentError::at_carrier(n)(e.into()))?;
            report.records.push(
                RunRecord::new(format!("s={s} N=2^{k}"))
                    .param("s", s)
                    .param("b", b)
                    .param("N", n)
                    .measure(
                        "trilinear_ratio",
                        Measurement::dimensionless(r.ratio, "sheared windows"),
                    )
                    .measure(
                        "numerator_xsb1",
                        Measurement::new(r.numerator, &format!("X^{{{s},{}}}", b - 1.0), "sheared windows"),
                    )
                    .measure(
                        "f_norm_xsb",
                        Measurement::new(r.f_norm, &format!("X^{{{s},{b}}}"), "sheared windows"),
                    )
                    .measure(
                        "conv_peak_scaled",
                        Measurement::dimensionless(r.conv_peak_scaled, "resonant window, units N^{-3}"),
                    )
                    .measure(
                        "resonant_share",
                        Measurement::dimensionless(r.resonant_share, "squared-numerator fraction"),
                    ),
            );
            points.push((n, r.ratio));
        }
        report
            .timings_ms
            .insert(format!("s={s}"), started.elapsed().as_secs_f64() * 1e3);

        match fit_log2_slope(&format!("trilinear_ratio_s{s}"), &points) {
            Some(fitted) => {
                let slope = fitted.slope;
                let expected = 2.0 * (0.75 - s);
                report.fits.push(fitted);
                let passed = if (s - 0.75).abs() < 1e-12 {
                    slope <= cfg.slope_tolerance
                } else {
                    (slope - expected).abs() <= cfg.slope_tolerance
                };
                report.push_check(CheckResult::new(
                    &format!("counterexample_slope_s={s}"),
                    passed,
                    format!(
                        "fitted {slope:.3}, expected {expected:.3} ± {}",
                        cfg.slope_tolerance
                    ),
                ));
            }
            None => report.warn(format!("s={s}: not enough sweep points for a fit")),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_scan_produces_slope_checks() {
        let mut config = RunConfig::default();
        config.counterexample.s_values = vec![0.25];
        config.counterexample.n_exp_min = 4;
        config.counterexample.n_exp_max = 6;
        let report = run_counterexample_scan(&config).unwrap();
        assert_eq!(report.fits.len(), 1);
        assert_eq!(report.checks.len(), 1);
        assert!(report.passed, "{:?}", report.checks);
    }

    #[test]
    fn empty_scan_warns_and_passes() {
        let mut config = RunConfig::default();
        config.counterexample.s_values.clear();
        let report = run_counterexample_scan(&config).unwrap();
        assert!(report.passed);
        assert!(!report.warnings.is_empty());
        assert!(report.records.is_empty());
    }
}
