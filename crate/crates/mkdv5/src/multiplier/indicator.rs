//! The thin indicator pair hugging the dispersion curve.
//!
//! `A = {(τ,ξ) : N ≤ ξ ≤ N + N^{−3/2}, |τ − ξ⁵| ≤ 1}` together with its
//! reflection −A; the spectrum f̃ = χ_A + χ_{−A} is conjugate-symmetric, so
//! the underlying field is real. In sheared coordinates (ξ, μ = τ−ξ⁵) both
//! components are axis-aligned boxes of area exactly 2N^{−3/2}.

use super::MultiplierError;
use crate::spectral::{ShearedSpectrum, ShearedWindow};
use num_complex::Complex64;

/// The indicator pair χ_A + χ_{−A} with its carrier and component width.
#[derive(Debug, Clone)]
pub struct SharpIndicator {
    pub carrier: f64,
    /// ξ-width of each component, N^{−3/2}.
    pub width: f64,
    pub spectrum: ShearedSpectrum,
}

impl SharpIndicator {
    /// Total support area: two components of ξ-width N^{−3/2}, μ-height 2.
    pub fn expected_area(&self) -> f64 {
        2.0 * 2.0 * self.width
    }
}

/// Build χ_A + χ_{−A} on sheared windows with `cells` cells across each
/// dimension of A (at least 16).
pub fn build_sharp_indicator(n_carrier: f64, cells: usize) -> Result<SharpIndicator, MultiplierError> {
    if cells < 16 {
        return Err(MultiplierError::UnderResolved {
            need: 16,
            got: cells,
        });
    }
    if !(n_carrier.is_finite() && n_carrier >= 1.0) {
        return Err(MultiplierError::GridInfeasible(format!(
            "carrier must be >= 1, got {n_carrier}"
        )));
    }
    let width = n_carrier.powf(-1.5);
    let plus = ShearedWindow {
        xi_min: n_carrier,
        xi_max: n_carrier + width,
        n_xi: cells,
        mu_min: -1.0,
        mu_max: 1.0,
        n_mu: cells,
    };
    let mut spectrum = ShearedSpectrum::new();
    spectrum.push_window_fn(plus, |_, _| Complex64::new(1.0, 0.0));
    spectrum.push_window_fn(plus.reflected(), |_, _| Complex64::new(1.0, 0.0));
    Ok(SharpIndicator {
        carrier: n_carrier,
        width,
        spectrum,
    })
}
