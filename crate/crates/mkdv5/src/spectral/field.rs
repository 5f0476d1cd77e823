//! Sampled functions on a periodic grid, physical or spectral side.

use super::{SpaceGrid, SpectralError};
use crate::fft;
use num_complex::Complex64;

/// Which side of the Fourier transform a field's samples live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Physical,
    Spectral,
}

/// Complex-valued field on a [`SpaceGrid`].
///
/// Spectral-side samples are Fourier coefficients `c_k` in FFT order, so a
/// physical constant `1` has spectral delta `c_0 = 1`.
#[derive(Debug, Clone)]
pub struct ComplexField {
    grid: SpaceGrid,
    side: Side,
    samples: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: SpaceGrid, side: Side, samples: Vec<Complex64>) -> Self {
        assert_eq!(
            samples.len(),
            grid.points(),
            "sample count {} does not match grid points {}",
            samples.len(),
            grid.points()
        );
        ComplexField { grid, side, samples }
    }

    pub fn zeros(grid: SpaceGrid, side: Side) -> Self {
        ComplexField::new(grid, side, vec![Complex64::new(0.0, 0.0); grid.points()])
    }

    /// Sample a physical-side field from a function of x.
    pub fn from_fn(grid: SpaceGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = grid.xs().map(f).collect();
        ComplexField::new(grid, Side::Physical, samples)
    }

    /// Single spectral mode `amp · e^{iξ_k x}` for signed mode number k.
    pub fn single_mode(grid: SpaceGrid, k: i64, amp: Complex64) -> Self {
        let mut f = ComplexField::zeros(grid, Side::Spectral);
        let idx = grid
            .index_of_mode(k)
            .unwrap_or_else(|| panic!("mode {} does not fit on {} point grid", k, grid.points()));
        f.samples[idx] = amp;
        f
    }

    pub fn grid(&self) -> SpaceGrid {
        self.grid
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Physical → spectral transform (unitary pair; Parseval holds).
    pub fn to_spectral(&self) -> Result<ComplexField, SpectralError> {
        match self.side {
            Side::Physical => Ok(ComplexField::new(
                self.grid,
                Side::Spectral,
                fft::to_coeffs(&self.samples),
            )),
            Side::Spectral => Err(SpectralError::SideMismatch {
                expected: Side::Physical,
                found: Side::Spectral,
            }),
        }
    }

    /// Spectral → physical transform.
    pub fn to_physical(&self) -> Result<ComplexField, SpectralError> {
        match self.side {
            Side::Spectral => Ok(ComplexField::new(
                self.grid,
                Side::Physical,
                fft::to_samples(&self.samples),
            )),
            Side::Physical => Err(SpectralError::SideMismatch {
                expected: Side::Spectral,
                found: Side::Physical,
            }),
        }
    }

    /// The field's spectral coefficients, transforming if needed.
    pub fn spectral(&self) -> ComplexField {
        match self.side {
            Side::Spectral => self.clone(),
            Side::Physical => self.to_spectral().expect("physical side checked"),
        }
    }

    /// The field's physical samples, transforming if needed.
    pub fn physical(&self) -> ComplexField {
        match self.side {
            Side::Physical => self.clone(),
            Side::Spectral => self.to_physical().expect("spectral side checked"),
        }
    }

    /// Spectral derivative of given order: each mode multiplied by `(iξ)^order`.
    ///
    /// The result is returned on the same side as the input. For odd orders the
    /// Nyquist mode has no conjugate partner, so its symbol is set to zero
    /// (keeps real fields real).
    pub fn derivative(&self, order: u32) -> ComplexField {
        let mut spec = self.spectral();
        apply_derivative_symbol(spec.samples_mut(), &self.grid, order);
        match self.side {
            Side::Spectral => spec,
            Side::Physical => spec.to_physical().expect("spectral side"),
        }
    }

    /// Pointwise linear combination `self + alpha * other` (same side, same grid).
    pub fn add_scaled(&self, alpha: Complex64, other: &ComplexField) -> ComplexField {
        assert_eq!(self.side, other.side, "side mismatch in add_scaled");
        assert_eq!(self.grid, other.grid, "grid mismatch in add_scaled");
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a + alpha * b)
            .collect();
        ComplexField::new(self.grid, self.side, samples)
    }

    pub fn scaled(&self, alpha: Complex64) -> ComplexField {
        let samples = self.samples.iter().map(|a| a * alpha).collect();
        ComplexField::new(self.grid, self.side, samples)
    }

    /// Largest |imaginary part| of the physical samples.
    pub fn max_imag(&self) -> f64 {
        self.physical()
            .samples
            .iter()
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }

    /// Real part of the physical samples as a [`RealField`].
    pub fn re(&self) -> RealField {
        let phys = self.physical();
        RealField::new(self.grid, phys.samples.iter().map(|z| z.re).collect())
    }
}

/// Multiply FFT-ordered spectral coefficients by the symbol `(iξ)^order`.
pub(crate) fn apply_derivative_symbol(coeffs: &mut [Complex64], grid: &SpaceGrid, order: u32) {
    if order == 0 {
        return;
    }
    let n = grid.points();
    for (idx, c) in coeffs.iter_mut().enumerate() {
        if order % 2 == 1 && idx == n / 2 {
            *c = Complex64::new(0.0, 0.0); // unpaired Nyquist mode
            continue;
        }
        let xi = grid.wavenumber(idx);
        let symbol = Complex64::new(0.0, xi).powu(order);
        *c *= symbol;
    }
}

/// Real-valued field on a [`SpaceGrid`] (physical side by construction).
#[derive(Debug, Clone)]
pub struct RealField {
    grid: SpaceGrid,
    samples: Vec<f64>,
}

impl RealField {
    pub fn new(grid: SpaceGrid, samples: Vec<f64>) -> Self {
        assert_eq!(samples.len(), grid.points());
        RealField { grid, samples }
    }

    pub fn zeros(grid: SpaceGrid) -> Self {
        RealField::new(grid, vec![0.0; grid.points()])
    }

    pub fn from_fn(grid: SpaceGrid, f: impl Fn(f64) -> f64) -> Self {
        let samples = grid.xs().map(f).collect();
        RealField::new(grid, samples)
    }

    pub fn grid(&self) -> SpaceGrid {
        self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    /// View as a physical-side complex field.
    pub fn to_complex(&self) -> ComplexField {
        ComplexField::new(
            self.grid,
            Side::Physical,
            self.samples.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    /// Spectral coefficients (conjugate-symmetric up to roundoff).
    pub fn spectral(&self) -> ComplexField {
        self.to_complex().to_spectral().expect("physical side")
    }

    /// Largest violation of spectral conjugate symmetry `c_{-k} = conj(c_k)`.
    pub fn conjugate_symmetry_residual(&self) -> f64 {
        let spec = self.spectral();
        let n = self.grid.points();
        let c = spec.samples();
        let mut worst: f64 = c[0].im.abs().max(c[n / 2].im.abs());
        for idx in 1..n / 2 {
            let diff = (c[idx] - c[n - idx].conj()).norm();
            worst = worst.max(diff);
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn grid() -> SpaceGrid {
        SpaceGrid::new(8.0, 16).unwrap()
    }

    #[test]
    fn constant_field_has_unit_delta_at_zero() {
        let f = ComplexField::from_fn(grid(), |_| Complex64::new(1.0, 0.0));
        let spec = f.to_spectral().unwrap();
        assert!((spec.samples()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        for c in &spec.samples()[1..] {
            assert!(c.norm() < 1e-13);
        }
    }

    #[test]
    fn fundamental_mode_is_delta_at_one() {
        let g = grid();
        let f = ComplexField::from_fn(g, |x| (Complex64::i() * TAU * x / g.length()).exp());
        let spec = f.to_spectral().unwrap();
        let idx = g.index_of_mode(1).unwrap();
        assert!((spec.samples()[idx] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let total: f64 = spec.samples().iter().map(|c| c.norm_sqr()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn side_mismatch_is_reported() {
        let f = ComplexField::zeros(grid(), Side::Spectral);
        assert!(matches!(
            f.to_spectral(),
            Err(SpectralError::SideMismatch { .. })
        ));
        let g = ComplexField::zeros(grid(), Side::Physical);
        assert!(matches!(
            g.to_physical(),
            Err(SpectralError::SideMismatch { .. })
        ));
    }

    #[test]
    fn derivative_of_sine_is_scaled_cosine() {
        let g = grid();
        let k = TAU / g.length();
        let f = ComplexField::from_fn(g, |x| Complex64::new((k * x).sin(), 0.0));
        let df = f.derivative(1);
        for (i, x) in g.xs().enumerate() {
            let expected = k * (k * x).cos();
            assert!((df.samples()[i].re - expected).abs() < 1e-12);
            assert!(df.samples()[i].im.abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let f = ComplexField::from_fn(grid(), |_| Complex64::new(3.5, 0.0));
        for order in 1..=5 {
            let df = f.derivative(order);
            assert!(df.samples().iter().all(|z| z.norm() < 1e-13));
        }
    }

    #[test]
    fn fifth_derivative_of_single_mode_has_symbol_ik5() {
        let g = grid();
        let f = ComplexField::single_mode(g, 3, Complex64::new(1.0, 0.0));
        let df = f.derivative(5);
        let xi = TAU * 3.0 / g.length();
        let expected = Complex64::new(0.0, xi.powi(5));
        let idx = g.index_of_mode(3).unwrap();
        assert!((df.samples()[idx] - expected).norm() < 1e-10);
    }

    #[test]
    fn real_field_spectrum_is_conjugate_symmetric() {
        let g = grid();
        let f = RealField::from_fn(g, |x| (TAU * x / g.length()).sin() + 0.3 * (2.0 * TAU * x / g.length()).cos());
        assert!(f.conjugate_symmetry_residual() < 1e-12);
    }
}
