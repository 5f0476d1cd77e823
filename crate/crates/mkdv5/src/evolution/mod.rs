//! Time integration of the fifth-order mKdV family and the cubic NLS.
//!
//! Both solvers use the integrating-factor form of the Duhamel formula: the
//! stiff linear flow (`e^{itξ⁵}` per mode for mKdV, `e^{itξ²}` for NLS) is
//! applied exactly, and classical four-stage Runge–Kutta integrates only the
//! nonlinear remainder. Sign conventions follow
//!
//! ```text
//! ∂ₜu = ∂ₓ⁵u − c₁∂ₓ³(u³) − c₂ u ∂ₓu ∂ₓ²u − c₃ u² ∂ₓ³u − c₀ u⁴∂ₓu   (mKdV family)
//! i∂ₜu − ∂ₓ²u ± |u|²u = 0                                          (cubic NLS)
//! ```

mod coeffs;
mod conserved;
mod mkdv;
mod nls;
mod trajectory;

pub use coeffs::EquationCoeffs;
pub use conserved::{
    conserved_quantities, conserved_quantities_complex, ConservationRow, ConservationTable,
};
pub use mkdv::{evolve_fifth_mkdv, linear_fifth_propagator, linear_fifth_propagator_complex, suggested_dt};
pub use nls::{evolve_cubic_nls, linear_schrodinger_propagator, NlsSign};
pub use trajectory::{ComplexTrajectory, RealTrajectory, SolverMeta, StorePolicy};

use crate::spectral::DealiasRule;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("solution norm grew by factor {factor:.3e} at t = {t:.6} (blow-up guard at {limit:.1e})")]
    BlowUp { t: f64, factor: f64, limit: f64 },
    #[error("time step {dt} must be positive and no larger than the horizon {t_final}")]
    BadTimeStep { dt: f64, t_final: f64 },
    #[error("horizon {0} must be positive and finite")]
    BadHorizon(f64),
    #[error("requested store time {0} is not reachable with the chosen dt")]
    UnreachableStoreTime(f64),
}

/// Options shared by both solvers.
#[derive(Debug, Clone)]
pub struct EvolveOptions {
    pub t_final: f64,
    pub dt: f64,
    pub dealias: DealiasRule,
    pub store: StorePolicy,
    /// Abort when the L² norm grows by more than this factor.
    pub blowup_factor: f64,
}

impl EvolveOptions {
    pub fn new(t_final: f64, dt: f64) -> Self {
        EvolveOptions {
            t_final,
            dt,
            dealias: DealiasRule::Pad2,
            store: StorePolicy::FirstAndLast,
            blowup_factor: 1e6,
        }
    }

    pub fn with_store(mut self, store: StorePolicy) -> Self {
        self.store = store;
        self
    }

    pub fn with_dealias(mut self, rule: DealiasRule) -> Self {
        self.dealias = rule;
        self
    }

    pub(crate) fn validate(&self) -> Result<(usize, f64), SolverError> {
        if !(self.t_final.is_finite() && self.t_final > 0.0) {
            return Err(SolverError::BadHorizon(self.t_final));
        }
        if !(self.dt.is_finite() && self.dt > 0.0 && self.dt <= self.t_final) {
            return Err(SolverError::BadTimeStep {
                dt: self.dt,
                t_final: self.t_final,
            });
        }
        // adjust dt so an integer number of steps lands exactly on t_final
        let steps = (self.t_final / self.dt).round().max(1.0) as usize;
        let dt = self.t_final / steps as f64;
        Ok((steps, dt))
    }
}
