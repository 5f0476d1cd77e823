//! Plot-data emission: per-fit tabular files ready for any plotting tool.

use super::{fmt_f64, IoError};
use crate::experiments::report::ExperimentReport;
use std::io::Write;
use std::path::{Path, PathBuf};

/// For each slope fit in the report, write `{experiment}_fit_{quantity}.tsv`
/// with columns `x  y  fit`; the fit column is left empty when the sweep had
/// too few points for a line. No rendering happens here.
pub fn emit_plot_data(report: &ExperimentReport, dir: &Path) -> Result<Vec<PathBuf>, IoError> {
    std::fs::create_dir_all(dir).map_err(IoError::file(dir))?;
    let mut written = Vec::new();

    for fit in &report.fits {
        let fname = format!(
            "{}_fit_{}.tsv",
            report.experiment,
            sanitize(&fit.quantity)
        );
        let path = dir.join(fname);
        let mut out = std::fs::File::create(&path).map_err(IoError::file(&path))?;
        writeln!(out, "x\ty\tfit").map_err(IoError::file(&path))?;
        for (x, y) in &fit.points {
            let fitted = if x.is_finite() && *x > 0.0 {
                let ly = fit.slope * x.log2() + fit.intercept;
                fmt_f64(ly.exp2())
            } else {
                String::new()
            };
            writeln!(out, "{}\t{}\t{}", fmt_f64(*x), fmt_f64(*y), fitted)
                .map_err(IoError::file(&path))?;
        }
        written.push(path);
    }

    // sweeps without a fit still emit their raw points
    if report.fits.is_empty() {
        for rec_key in sweep_measurements(report) {
            let fname = format!("{}_sweep_{}.tsv", report.experiment, sanitize(&rec_key));
            let path = dir.join(fname);
            let mut out = std::fs::File::create(&path).map_err(IoError::file(&path))?;
            writeln!(out, "x\ty\tfit").map_err(IoError::file(&path))?;
            for rec in &report.records {
                if let (Some(x), Some(m)) = (rec.params.get("N"), rec.measurements.get(&rec_key)) {
                    writeln!(out, "{}\t{}\t", fmt_f64(*x), fmt_f64(m.value))
                        .map_err(IoError::file(&path))?;
                }
            }
            written.push(path);
        }
    }
    Ok(written)
}

fn sweep_measurements(report: &ExperimentReport) -> Vec<String> {
    let mut keys = std::collections::BTreeSet::new();
    for rec in &report.records {
        if rec.params.contains_key("N") {
            keys.extend(rec.measurements.keys().cloned());
        }
    }
    keys.into_iter().collect()
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::fit::fit_log2_slope;
    use crate::experiments::report::{ExperimentReport, Measurement, RunRecord};
    use crate::io::config::RunConfig;

    #[test]
    fn three_point_sweep_populates_fit_column() {
        let config = RunConfig::default();
        let mut report = ExperimentReport::new("plotcheck", &config);
        let pts = vec![(8.0, 1.0), (16.0, 0.25), (32.0, 0.0625)];
        report.fits.push(fit_log2_slope("err", &pts).unwrap());
        let dir = std::env::temp_dir().join(format!("mkdv5_plot_test_{}", std::process::id()));
        let files = emit_plot_data(&report, &dir).unwrap();
        assert_eq!(files.len(), 1);
        let text = std::fs::read_to_string(&files[0]).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        // fit column populated on every data row
        for line in &lines[1..] {
            assert_eq!(line.split('\t').count(), 3);
            assert!(!line.split('\t').nth(2).unwrap().is_empty());
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn single_point_sweep_emits_data_with_empty_fit() {
        let config = RunConfig::default();
        let mut report = ExperimentReport::new("plotcheck2", &config);
        report.records.push(
            RunRecord::new("N=8")
                .param("N", 8.0)
                .measure("err", Measurement::dimensionless(0.5, "g")),
        );
        let dir = std::env::temp_dir().join(format!("mkdv5_plot_test2_{}", std::process::id()));
        let files = emit_plot_data(&report, &dir).unwrap();
        assert_eq!(files.len(), 1);
        let text = std::fs::read_to_string(&files[0]).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x\ty\tfit");
        let row = lines.next().unwrap();
        assert!(row.ends_with('\t'), "fit column should be empty: {row:?}");
        std::fs::remove_dir_all(&dir).ok();
    }
}
