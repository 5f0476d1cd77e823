//! Configuration parsing, report persistence, trajectory checkpoints, and
//! plot-data emission.

pub mod config;
mod plot;
mod report_files;
mod trajectory_files;

pub use config::{apply_overrides, parse_config, parse_config_str, ConfigError, ExperimentKind, RunConfig};
pub use plot::emit_plot_data;
pub use report_files::{read_report, write_report, WrittenReport};
pub use trajectory_files::{read_real_trajectory, write_real_trajectory};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io failure on {path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error("serialization failure: {0}")]
    Serde(String),
    #[error("trajectory file {path} is not valid: {reason}")]
    BadTrajectory { path: String, reason: String },
}

impl IoError {
    pub(crate) fn file(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
        move |source| IoError::File {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Format a float with 17 significant digits (lossless for f64 round trips).
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}
