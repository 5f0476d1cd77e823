//! Pseudo-spectral laboratory for the fifth-order modified KdV equation
//!
//! ```text
//! ∂ₜu − ∂ₓ⁵u + c₁∂ₓ³(u³) + c₂ u ∂ₓu ∂ₓ²u + c₃ u² ∂ₓ³u + c₀ u⁴∂ₓu = 0
//! ```
//!
//! on a periodic domain, together with the cubic nonlinear Schrödinger
//! equation `i∂ₜu − ∂ₓ²u + |u|²u = 0` that governs wave-packet envelopes
//! riding the carrier `e^{iNx}e^{iN⁵t}`.
//!
//! The crate is organised around six subsystems:
//!
//! * [`spectral`] — periodic grids, FFT-backed fields, dealiasing, smooth
//!   time cutoffs, and the Hˢ / X^{s,b} norm quadratures (including sheared
//!   `(ξ, μ = τ−ξ⁵)` representations for curve-hugging spectra).
//! * [`evolution`] — exact fifth-order linear propagator and integrating-factor
//!   RK4 solvers for the mKdV family and the cubic NLS, with conserved-quantity
//!   tracking.
//! * [`wavepacket`] — the carrier/envelope change of variables, the approximate
//!   solution `U_ap`, modulation and rescaling helpers, and residual/error-term
//!   evaluators.
//! * [`multiplier`] — the resonance function `h(ξ) = ξ₁⁵+ξ₂⁵+ξ₃⁵`, dyadic
//!   block specifications with closed-form bounds, a randomized lower estimator
//!   for the trilinear multiplier norm, and the sharp counterexample built from
//!   thin indicator sets near the dispersion curve.
//! * [`experiments`] — end-to-end experiment drivers that emit structured,
//!   reproducible reports (approximation quality, uniform-continuity failure,
//!   counterexample scaling scan, validation suite).
//! * [`io`] — config parsing, report/trajectory persistence, plot-data export.
//!
//! Run `cargo run -p mkdv5 -- help` for the command-line front end, or see the
//! `examples/` directory for one runnable program per capability.

pub mod evolution;
pub mod experiments;
pub mod fft;
pub mod io;
pub mod multiplier;
pub mod spectral;
pub mod wavepacket;

pub use evolution::{
    evolve_cubic_nls, evolve_fifth_mkdv, linear_fifth_propagator, ComplexTrajectory,
    EquationCoeffs, EvolveOptions, NlsSign, RealTrajectory,
};
pub use spectral::{
    ComplexField, DealiasRule, RealField, Side, SpaceGrid, SpaceTimeField, SpaceTimeGrid,
    TimeCutoff,
};
