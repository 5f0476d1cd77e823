//! End-to-end experiments reproducing the quantitative mechanisms at desk
//! scale, each emitting a structured, reproducible [`report::ExperimentReport`].

pub mod approximation;
pub mod counterexample;
pub mod fit;
pub mod illposedness;
pub mod report;
pub mod validation;

pub use approximation::run_approximation_experiment;
pub use counterexample::run_counterexample_scan;
pub use fit::{fit_log2_slope, SlopeFit};
pub use illposedness::run_illposedness_experiment;
pub use report::{CheckResult, ExperimentReport, Measurement, RunRecord};
pub use validation::run_validation_suite;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("at carrier N = {n}: {source}")]
    AtCarrier {
        n: f64,
        #[source]
        source: Box<ExperimentError>,
    },
    #[error(transparent)]
    Solver(#[from] crate::evolution::SolverError),
    #[error(transparent)]
    WavePacket(#[from] crate::wavepacket::WavePacketError),
    #[error(transparent)]
    Multiplier(#[from] crate::multiplier::MultiplierError),
    #[error(transparent)]
    Spectral(#[from] crate::spectral::SpectralError),
    #[error("infeasible configuration: {0}")]
    Infeasible(String),
}

impl ExperimentError {
    pub(crate) fn at_carrier(n: f64) -> impl FnOnce(ExperimentError) -> ExperimentError {
        move |source| ExperimentError::AtCarrier {
            n,
            source: Box::new(source),
        }
    }
}

/// Smallest 5-smooth even integer ≥ n (fast FFT sizes).
pub(crate) fn next_fast_size(n: usize) -> usize {
    let mut m = n.max(8);
    if m % 2 == 1 {
        m += 1;
    }
    loop {
        let mut r = m;
        for p in [2usize, 3, 5] {
            while r % p == 0 {
                r /= p;
            }
        }
        if r == 1 {
            return m;
        }
        m += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::next_fast_size;

    #[test]
    fn fast_sizes_are_five_smooth_and_even() {
        for n in [7usize, 100, 1000, 150_000] {
            let m = next_fast_size(n);
            assert!(m >= n && m % 2 == 0);
            let mut r = m;
            for p in [2usize, 3, 5] {
                while r % p == 0 {
                    r /= p;
                }
            }
            assert_eq!(r, 1, "{m} is not 5-smooth");
        }
    }
}
