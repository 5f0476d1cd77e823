//! Grids, spectral fields, dealiasing, smooth time cutoffs, and the
//! Hˢ / X^{s,b} norm quadratures used by every other module.
//!
//! Norm conventions (continuum-normalized so values are stable under grid
//! refinement): with coefficients `c_k` of `u = Σ c_k e^{iξ_k x}` on `[0, L)`,
//!
//! ```text
//! ‖u‖_{L²}  = (L Σ_k |c_k|²)^{1/2}
//! ‖u‖_{Hˢ}  = (L Σ_k ⟨ξ_k⟩^{2s} |c_k|²)^{1/2},      ⟨ξ⟩ = (1+ξ²)^{1/2}
//! ‖u‖_{X^{s,b}} = (L T Σ_{j,k} ⟨ξ_k⟩^{2s}⟨τ_j−ξ_k⁵⟩^{2b} |c_{jk}|²)^{1/2}
//! ```
//!
//! which are the Riemann-sum discretizations of `(1/2π)∫⟨ξ⟩^{2s}|û|²dξ` and
//! `(1/4π²)∬⟨ξ⟩^{2s}⟨τ−ξ⁵⟩^{2b}|ũ|²dτdξ` with `û(ξ_k) = L c_k`,
//! `ũ(τ_j,ξ_k) = L T c_{jk}`.

mod cutoff;
pub(crate) mod dealias;
mod field;
mod grid;
mod norms;
mod sheared;
mod spacetime;

pub use cutoff::{Smoothness, TimeCutoff};
pub use dealias::{cube_dealiased, dealias, padded_quartic_derivative, padded_triple, DealiasRule};
pub use field::{ComplexField, RealField, Side};
pub use grid::SpaceGrid;
pub use norms::{japanese_bracket, l2_norm, sobolev_norm, sobolev_norm_rescaled};
pub use sheared::{ShearedSpectrum, ShearedWindow};
pub use spacetime::{SpaceTimeField, SpaceTimeGrid, XsbNorm, XsbTailDiagnostic};

use thiserror::Error;

/// Errors from grid construction and spectral field operations.
#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("grid points must be even and >= 8, got {0}")]
    BadPointCount(usize),
    #[error("grid length must be positive and finite, got {0}")]
    BadLength(f64),
    #[error("field is on the {found:?} side, expected {expected:?}")]
    SideMismatch { expected: Side, found: Side },
    #[error("fields live on different grids: {0}")]
    GridMismatch(String),
    #[error("time cutoff intervals invalid: support {support:?} must strictly contain plateau {plateau:?}")]
    BadCutoff {
        plateau: (f64, f64),
        support: (f64, f64),
    },
    #[error("sheared window needs at least {need} cells across each dimension, got {got}")]
    UnderResolved { need: usize, got: usize },
}
