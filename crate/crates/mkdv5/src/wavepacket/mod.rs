//! Wave-packet machinery: the carrier/envelope change of variables, the
//! approximate solution built from a cubic-NLS envelope riding the carrier
//! `e^{iNx}e^{iN⁵t}`, modulation and rescaling helpers, and residual
//! evaluators measuring how well the packet solves the fifth-order equation.

mod build;
mod frame;
mod modulate;
mod rescale;
mod residual;
mod terms;

pub use build::{build_u_ap, EnvelopeSampler, WavePacket, WavePacketOptions};
pub use frame::{change_of_variables, design_carrier_grid, CarrierFrame, WavePacketParams};
pub use modulate::modulation_build;
pub use rescale::{rescale_complex, rescale_real, rescale_real_to, rescale_trajectory};
pub use residual::{residual_direct, residual_from_expansion, SpaceTimeRealField};
pub use terms::{e7_offcurve_xsb_norm, error_terms, ErrorTerms};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum WavePacketError {
    #[error("sobolev exponent s = {0} outside the admissible range (−7/24, 3/4)")]
    SobolevOutOfRange(f64),
    #[error("perturbation must satisfy 0 <= delta << eps, got delta = {delta}, eps = {eps}")]
    BadPerturbation { delta: f64, eps: f64 },
    #[error("carrier 3N = {three_n:.3} exceeds the grid's resolved band {k_max:.3}")]
    CarrierUnresolved { three_n: f64, k_max: f64 },
    #[error("envelope window mismatch: beta * L_x / L_y = {0} is not an integer")]
    IncommensurateWindows(f64),
    #[error("target grid cannot hold the envelope: need {need} modes per envelope period, have {have}")]
    EnvelopeUnderResolved { need: usize, have: usize },
    #[error("envelope mass outside the window is {0:.3e} (limit 1e-8)")]
    EnvelopeEscaped(f64),
    #[error("envelope trajectory has no state at t = {0} (nearest stored: {1})")]
    EnvelopeTimeMissing(f64, f64),
    #[error("modulation hypothesis failed in case {case}: {details}")]
    ModulationHypothesis { case: String, details: String },
    #[error("carrier frequency {m} is not commensurate with the grid (fundamental {fundamental})")]
    IncommensurateCarrier { m: f64, fundamental: f64 },
    #[error("rescale target too coarse: {0}")]
    RescaleOverflow(String),
    #[error(transparent)]
    Spectral(#[from] crate::spectral::SpectralError),
}
