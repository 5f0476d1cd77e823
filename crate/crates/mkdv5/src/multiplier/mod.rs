//! Dyadic multiplier machinery: the resonance function on the hyperplane
//! ξ₁+ξ₂+ξ₃ = 0, block specifications with closed-form norm bounds, a
//! randomized lower estimator for the trilinear multiplier norm, and the
//! sharp counterexample built from thin indicator sets hugging the
//! dispersion curve τ = ξ⁵.

mod block;
mod estimate;
mod indicator;
mod resonance;
mod trilinear;

pub use block::{block_bound, BlockBound, BlockCase, DyadicBlockSpec};
pub use estimate::{estimate_block_norm, BlockNormEstimate, EstimatorOptions};
pub use indicator::{build_sharp_indicator, SharpIndicator};
pub use resonance::{
    check_resonance_relation, resonance_h, resonance_h_expanded, resonance_h3, ResonanceReport,
};
pub use trilinear::{trilinear_ratio, TrilinearOptions, TrilinearRatio};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MultiplierError {
    #[error("block spec violates {relation}: {details}")]
    Inadmissible { relation: String, details: String },
    #[error("dyadic value must be a positive power of two, got {0}")]
    NotDyadic(f64),
    #[error("modulation magnitudes must be >= 1, got {0}")]
    ModulationTooSmall(f64),
    #[error("sheared window under-resolved: need {need} cells across the thin dimension, got {got}")]
    UnderResolved { need: usize, got: usize },
    #[error("block does not fit a desk-scale grid: {0}")]
    GridInfeasible(String),
}
