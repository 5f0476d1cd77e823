//! The scaling symmetry U^λ(t, x) = λ U(λ⁵t, λx).
//!
//! On a periodic grid the spatial dilation is a pure relabeling: the natural
//! output grid is `[0, L/λ)` with the same points, mode k moving to frequency
//! λξ_k and the samples multiplied by λ. That makes rescaling exact for any
//! λ > 0; norms of rescaled fields can equivalently be read off the original
//! coefficients via [`crate::spectral::sobolev_norm_rescaled`].

use super::WavePacketError;
use crate::evolution::RealTrajectory;
use crate::spectral::{ComplexField, RealField, SpaceGrid};

pub fn rescale_real(f: &RealField, lambda: f64) -> RealField {
    assert!(lambda > 0.0 && lambda.is_finite());
    let grid = SpaceGrid::new(f.grid().length() / lambda, f.grid().points())
        .expect("dilated grid is valid");
    RealField::new(grid, f.samples().iter().map(|v| lambda * v).collect())
}

pub fn rescale_complex(f: &ComplexField, lambda: f64) -> ComplexField {
    assert!(lambda > 0.0 && lambda.is_finite());
    let grid = SpaceGrid::new(f.grid().length() / lambda, f.grid().points())
        .expect("dilated grid is valid");
    ComplexField::new(
        grid,
        f.side(),
        f.samples().iter().map(|v| lambda * v).collect(),
    )
}

/// Rescale a whole trajectory: states by [`rescale_real`], times by λ⁻⁵.
pub fn rescale_trajectory(traj: &RealTrajectory, lambda: f64) -> RealTrajectory {
    assert!(lambda > 0.0 && lambda.is_finite());
    let grid = SpaceGrid::new(traj.grid.length() / lambda, traj.grid.points())
        .expect("dilated grid is valid");
    RealTrajectory {
        grid,
        times: traj.times.iter().map(|t| t / lambda.powi(5)).collect(),
        states: traj
            .states
            .iter()
            .map(|s| s.iter().map(|v| lambda * v).collect())
            .collect(),
        meta: traj.meta.clone(),
    }
}

/// Rescale onto a caller-specified finer grid of the same physical length
/// L/λ: the spectrum is zero-padded (exact spectral interpolation). Errors
/// when the target cannot hold the rescaled modes.
pub fn rescale_real_to(
    f: &RealField,
    lambda: f64,
    target: SpaceGrid,
) -> Result<RealField, WavePacketError> {
    let natural = SpaceGrid::new(f.grid().length() / lambda, f.grid().points())
        .expect("dilated grid is valid");
    if (target.length() - natural.length()).abs() > 1e-9 * natural.length() {
        return Err(WavePacketError::RescaleOverflow(format!(
            "target length {} != rescaled length {}",
            target.length(),
            natural.length()
        )));
    }
    if target.points() < natural.points() {
        return Err(WavePacketError::RescaleOverflow(format!(
            "target has {} points, rescaled field needs {}",
            target.points(),
            natural.points()
        )));
    }
    let spec = rescale_real(f, lambda).spectral();
    let padded = crate::spectral::dealias::pad_coeffs(spec.samples(), target.points());
    let out = ComplexField::new(target, crate::spectral::Side::Spectral, padded)
        .to_physical()?;
    Ok(out.re())
}
