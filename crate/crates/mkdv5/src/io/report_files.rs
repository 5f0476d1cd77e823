//! Report persistence: schema-versioned JSON plus a flat TSV table.

use super::{fmt_f64, IoError};
use crate::experiments::report::ExperimentReport;
use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Paths produced by [`write_report`].
#[derive(Debug, Clone)]
pub struct WrittenReport {
    pub json: PathBuf,
    pub table: PathBuf,
}

/// Write `{experiment}_report.json` (machine-readable, schema-versioned) and
/// `{experiment}_records.tsv` (one row per run record; the header names every
/// column; floats carry 17 significant digits).
pub fn write_report(report: &ExperimentReport, dir: &Path) -> Result<WrittenReport, IoError> {
    std::fs::create_dir_all(dir).map_err(IoError::file(dir))?;
    let json_path = dir.join(format!("{}_report.json", report.experiment));
    let json = serde_json::to_string_pretty(report).map_err(|e| IoError::Serde(e.to_string()))?;
    std::fs::write(&json_path, json).map_err(IoError::file(&json_path))?;

    let table_path = dir.join(format!("{}_records.tsv", report.experiment));
    let mut out = std::fs::File::create(&table_path).map_err(IoError::file(&table_path))?;
    write_table(report, &mut out).map_err(IoError::file(&table_path))?;

    Ok(WrittenReport {
        json: json_path,
        table: table_path,
    })
}

fn write_table(report: &ExperimentReport, out: &mut impl Write) -> std::io::Result<()> {
    // stable column order: sorted union of keys across records
    let mut param_keys = BTreeSet::new();
    let mut measure_keys = BTreeSet::new();
    for rec in &report.records {
        param_keys.extend(rec.params.keys().cloned());
        measure_keys.extend(rec.measurements.keys().cloned());
    }
    write!(out, "label")?;
    for k in &param_keys {
        write!(out, "\t{k}")?;
    }
    for k in &measure_keys {
        write!(out, "\t{k}")?;
    }
    writeln!(out)?;
    for rec in &report.records {
        write!(out, "{}", rec.label)?;
        for k in &param_keys {
            match rec.params.get(k) {
                Some(v) => write!(out, "\t{}", fmt_f64(*v))?,
                None => write!(out, "\t")?,
            }
        }
        for k in &measure_keys {
            match rec.measurements.get(k) {
                Some(m) => write!(out, "\t{}", fmt_f64(m.value))?,
                None => write!(out, "\t")?,
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Read a JSON report back; used by the round-trip guarantees.
pub fn read_report(path: &Path) -> Result<ExperimentReport, IoError> {
    let text = std::fs::read_to_string(path).map_err(IoError::file(path))?;
    serde_json::from_str(&text).map_err(|e| IoError::Serde(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::report::{Measurement, RunRecord};
    use crate::io::config::RunConfig;

    fn sample_report() -> ExperimentReport {
        let config = RunConfig::default();
        let mut report = ExperimentReport::new("sample", &config);
        report.records.push(
            RunRecord::new("N=8")
                .param("N", 8.0)
                .measure("sup_err_H34", Measurement::new(1.25e-3, "H^{3/4}", "g1")),
        );
        report.records.push(
            RunRecord::new("N=16")
                .param("N", 16.0)
                .measure("sup_err_H34", Measurement::new(2.5e-4, "H^{3/4}", "g1")),
        );
        report
    }

    #[test]
    fn json_round_trip_is_identity() {
        let report = sample_report();
        let dir = std::env::temp_dir().join(format!("mkdv5_report_test_{}", std::process::id()));
        let written = write_report(&report, &dir).unwrap();
        let back = read_report(&written.json).unwrap();
        assert_eq!(report, back);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn empty_report_writes_header_only_table() {
        let config = RunConfig::default();
        let report = ExperimentReport::new("empty", &config);
        let mut buf = Vec::new();
        write_table(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("label"));
    }

    #[test]
    fn table_columns_include_schema_names() {
        let report = sample_report();
        let mut buf = Vec::new();
        write_table(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(header, "label\tN\tsup_err_H34");
        // 17 significant digits
        assert!(text.contains("1.2500000000000000e-3"));
    }
}
