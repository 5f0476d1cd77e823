//! End-to-end checks of the command-line front end: exit codes, config
//! handling, output files.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mkdv5"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mkdv5_cli_{tag}_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn validate_with_defaults_exits_zero() {
    let out = bin().arg("validate").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("config ok"));
    assert!(stdout.contains("[approximation]")); // config echo
}

#[test]
fn unknown_subcommand_and_missing_value_exit_two() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["validate", "--set"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_errors_exit_two_and_name_the_key() {
    let dir = temp_dir("badcfg");
    let path = dir.join("bad.toml");
    std::fs::write(&path, "unknown_key = 3\n").unwrap();
    let out = bin()
        .args(["validate", "--config", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown_key"));

    // out-of-range s for the ill-posedness experiment cites the range
    let out = bin()
        .args(["illposed", "--set", "illposedness.s=0.9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("illposedness.s") && err.contains("3/4"), "{err}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn suite_runs_and_writes_reports() {
    let dir = temp_dir("suite");
    let out = bin()
        .args(["suite", "--quiet"])
        .env("MKDV5_OUT_DIR", dir.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(dir.join("validation_report.json").exists());
    assert!(dir.join("validation_records.tsv").exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn failed_check_exits_five() {
    let dir = temp_dir("fail5");
    // impossible slope tolerance forces a failing check on a tiny scan
    let out = bin()
        .args([
            "counterexample",
            "--quiet",
            "--set",
            "counterexample.s_values=[0.25]",
            "--set",
            "counterexample.n_exp_max=6",
            "--set",
            "counterexample.slope_tolerance=1e-9",
        ])
        .env("MKDV5_OUT_DIR", dir.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5), "{out:?}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn precondition_failure_exits_three() {
    let dir = temp_dir("fail3");
    // envelope too wide for its window: confinement check trips
    let out = bin()
        .args([
            "approx",
            "--quiet",
            "--set",
            "approximation.n_sweep=[8.0]",
            "--set",
            "approximation.envelope_width=3.0",
        ])
        .env("MKDV5_OUT_DIR", dir.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("envelope"), "{err}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn blowup_guard_exits_four() {
    let dir = temp_dir("fail4");
    // absurd amplitude with a coarse step trips the numerical guard
    let out = bin()
        .args([
            "approx",
            "--quiet",
            "--set",
            "approximation.n_sweep=[8.0]",
            "--set",
            "approximation.eps=2000.0",
            "--set",
            "approximation.dt=0.01",
            "--set",
            "approximation.t_final=1.0",
        ])
        .env("MKDV5_OUT_DIR", dir.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4), "{out:?}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn resonance_subcommand_reports() {
    let out = bin()
        .args(["resonance", "--set", "validation.resonance_samples=2000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("resonance relation"));
}
