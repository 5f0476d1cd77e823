//! Thin command-line front end: parse a config, run one experiment, write
//! the report, table, and plot data.
//!
//! ```text
//! mkdv5 <validate|approx|illposed|counterexample|resonance|suite>
//!       [--config PATH] [--set key.path=value]... [--quiet]
//! ```
//!
//! Exit codes: 0 success, 2 config error, 3 precondition error, 4 numerical
//! guard abort, 5 acceptance failure (a report check did not pass), 1 other.

use mkdv5::experiments::{
    run_approximation_experiment, run_counterexample_scan, run_illposedness_experiment,
    run_validation_suite, ExperimentError, ExperimentReport,
};
use mkdv5::io::{
    apply_overrides, emit_plot_data, parse_config, write_report, ConfigError, ExperimentKind,
    RunConfig,
};
use mkdv5::multiplier::check_resonance_relation;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const USAGE: &str = "usage: mkdv5 <validate|approx|illposed|counterexample|resonance|suite> \
[--config PATH] [--set key=value]... [--quiet]";

struct Args {
    command: ExperimentKind,
    config_path: Option<PathBuf>,
    overrides: Vec<String>,
    quiet: bool,
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    let mut iter = argv.iter();
    let command = match iter.next().map(String::as_str) {
        Some("validate") => ExperimentKind::Validate,
        Some("approx") => ExperimentKind::Approx,
        Some("illposed") => ExperimentKind::Illposed,
        Some("counterexample") => ExperimentKind::Counterexample,
        Some("resonance") => ExperimentKind::Resonance,
        Some("suite") => ExperimentKind::Suite,
        Some("help") | Some("--help") | Some("-h") | None => return Err(USAGE.to_string()),
        Some(other) => return Err(format!("unknown subcommand `{other}`\n{USAGE}")),
    };
    let mut args = Args {
        command,
        config_path: None,
        overrides: Vec::new(),
        quiet: false,
    };
    while let Some(flag) = iter.next() {
        match flag.as_str() {
            "--config" => {
                let path = iter.next().ok_or("--config needs a path")?;
                args.config_path = Some(PathBuf::from(path));
            }
            "--set" => {
                let kv = iter.next().ok_or("--set needs key=value")?;
                args.overrides.push(kv.clone());
            }
            "--quiet" => args.quiet = true,
            other => return Err(format!("unknown flag `{other}`\n{USAGE}")),
        }
    }
    Ok(args)
}

fn load_config(args: &Args) -> Result<RunConfig, ConfigError> {
    let mut config = match &args.config_path {
        Some(path) => parse_config(path)?,
        None => RunConfig::default(),
    };
    config = apply_overrides(&config, &args.overrides)?;
    config.experiment = args.command;
    if let Ok(dir) = std::env::var("MKDV5_OUT_DIR") {
        config.output_dir = dir;
    }
    mkdv5::io::config::validate(&config)?;
    Ok(config)
}

fn exit_code_for(err: &ExperimentError) -> u8 {
    match err {
        ExperimentError::AtCarrier { source, .. } => exit_code_for(source),
        ExperimentError::Solver(mkdv5::evolution::SolverError::BlowUp { .. }) => 4,
        ExperimentError::Solver(_) => 3,
        ExperimentError::WavePacket(_) | ExperimentError::Multiplier(_) => 3,
        ExperimentError::Spectral(_) => 3,
        ExperimentError::Infeasible(_) => 2,
    }
}

fn persist(report: &ExperimentReport, config: &RunConfig, quiet: bool) -> Result<(), u8> {
    let dir = Path::new(&config.output_dir);
    let written = write_report(report, dir).map_err(|e| {
        eprintln!("error: {e}");
        1u8
    })?;
    let plots = emit_plot_data(report, dir).map_err(|e| {
        eprintln!("error: {e}");
        1u8
    })?;
    if !quiet {
        for check in &report.checks {
            println!(
                "[{}] {}: {}",
                if check.passed { "pass" } else { "FAIL" },
                check.name,
                check.detail
            );
        }
        for warning in &report.warnings {
            println!("[warn] {warning}");
        }
        println!("report:  {}", written.json.display());
        println!("records: {}", written.table.display());
        for p in plots {
            println!("plot:    {}", p.display());
        }
    }
    Ok(())
}

fn run() -> Result<u8, u8> {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let args = parse_args(&argv).map_err(|msg| {
        eprintln!("{msg}");
        2u8
    })?;
    let config = load_config(&args).map_err(|e| {
        eprintln!("config error: {e}");
        2u8
    })?;

    if args.command == ExperimentKind::Validate {
        if !args.quiet {
            println!("config ok");
            println!(
                "{}",
                toml::to_string_pretty(&config).unwrap_or_else(|e| format!("(echo failed: {e})"))
            );
        }
        return Ok(0);
    }

    if args.command == ExperimentKind::Resonance {
        let report = check_resonance_relation(config.validation.resonance_samples, config.seed);
        if !args.quiet {
            println!(
                "resonance relation on {} samples: ratio in [{:.5}, {:.5}], identity residual {:.3e}",
                report.accepted, report.ratio_min, report.ratio_max, report.identity_residual
            );
        }
        return if report.relation_holds() { Ok(0) } else { Err(5) };
    }

    let result = match args.command {
        ExperimentKind::Approx => run_approximation_experiment(&config),
        ExperimentKind::Illposed => run_illposedness_experiment(&config),
        ExperimentKind::Counterexample => run_counterexample_scan(&config),
        ExperimentKind::Suite => run_validation_suite(&config),
        ExperimentKind::Validate | ExperimentKind::Resonance => unreachable!(),
    };
    match result {
        Ok(report) => {
            persist(&report, &config, args.quiet)?;
            if report.passed {
                Ok(0)
            } else {
                Err(5)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            Err(exit_code_for(&err))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) | Err(code) => ExitCode::from(code),
    }
}
