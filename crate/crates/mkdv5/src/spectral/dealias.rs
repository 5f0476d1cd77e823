//! Aliasing control for cubic (and quintic) nonlinearities.
//!
//! A pointwise product of trigonometric polynomials computed on the sampling
//! grid folds frequencies above Nyquist back into the band. For a cubic
//! product of a field supported on |k| ≤ K the alias-free condition on an
//! m-point grid is m ≥ 4K, which gives two usable rules:
//!
//! * [`DealiasRule::Pad2`] — evaluate products on a grid zero-padded by a
//!   factor 2 (m = 2n, K = n/2): exact for cubic products on the full band.
//! * [`DealiasRule::Truncate`] — keep |k| ≤ n/4 and evaluate products on the
//!   original grid: cheaper, exact only on the retained quarter band.
//!
//! Quintic products (`u⁴∂ₓu`) need m ≥ 6K and are evaluated on a factor-3
//! padded grid.

use super::field::ComplexField;
use super::{SpaceGrid, Side};
use crate::fft;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum DealiasRule {
    /// Zero-pad products by a factor 2; exact cubic dealiasing on |k| < n/2.
    Pad2,
    /// Keep |k| ≤ n/4 and multiply on the working grid.
    Truncate,
}

impl DealiasRule {
    /// Largest retained |mode number| on an n-point grid.
    pub fn retained_modes(&self, n: usize) -> i64 {
        match self {
            // everything except the unpaired Nyquist mode
            DealiasRule::Pad2 => (n as i64) / 2 - 1,
            DealiasRule::Truncate => (n as i64) / 4,
        }
    }
}

/// Zero all spectral modes above the rule's retained band (input must be spectral).
pub fn dealias(f: &ComplexField, rule: DealiasRule) -> ComplexField {
    assert_eq!(f.side(), Side::Spectral, "dealias expects a spectral field");
    let mut out = f.clone();
    let grid = f.grid();
    zero_above(out.samples_mut(), &grid, rule.retained_modes(grid.points()));
    out
}

pub(crate) fn zero_above(coeffs: &mut [Complex64], grid: &SpaceGrid, keep: i64) {
    for (idx, c) in coeffs.iter_mut().enumerate() {
        if grid.mode_number(idx).abs() > keep {
            *c = Complex64::new(0.0, 0.0);
        }
    }
}

/// Embed length-n FFT-ordered coefficients into a length-m array (m ≥ n).
pub(crate) fn pad_coeffs(coeffs: &[Complex64], m: usize) -> Vec<Complex64> {
    let n = coeffs.len();
    assert!(m >= n);
    let mut out = vec![Complex64::new(0.0, 0.0); m];
    let half = n / 2;
    out[..half].copy_from_slice(&coeffs[..half]);
    out[m - half..].copy_from_slice(&coeffs[half..]);
    out
}

/// Restrict length-m coefficients back to a length-n array.
pub(crate) fn unpad_coeffs(coeffs: &[Complex64], n: usize) -> Vec<Complex64> {
    let m = coeffs.len();
    let half = n / 2;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    out[..half].copy_from_slice(&coeffs[..half]);
    out[half..].copy_from_slice(&coeffs[m - half..]);
    out
}

/// Pointwise triple product of spectral coefficient arrays, alias-free via the
/// given rule. Inputs and output are FFT-ordered coefficients on the same grid.
pub(crate) fn triple_product_coeffs(
    a: &[Complex64],
    b: &[Complex64],
    c: &[Complex64],
    grid: &SpaceGrid,
    rule: DealiasRule,
) -> Vec<Complex64> {
    let n = grid.points();
    match rule {
        DealiasRule::Pad2 => {
            let m = 2 * n;
            let pa = fft::to_samples(&pad_coeffs(a, m));
            let pb = fft::to_samples(&pad_coeffs(b, m));
            let pc = fft::to_samples(&pad_coeffs(c, m));
            let prod: Vec<Complex64> = pa
                .iter()
                .zip(&pb)
                .zip(&pc)
                .map(|((x, y), z)| x * y * z)
                .collect();
            let mut out = unpad_coeffs(&fft::to_coeffs(&prod), n);
            zero_above(&mut out, grid, rule.retained_modes(n));
            out
        }
        DealiasRule::Truncate => {
            let keep = rule.retained_modes(n);
            let trim = |v: &[Complex64]| {
                let mut t = v.to_vec();
                zero_above(&mut t, grid, keep);
                t
            };
            let pa = fft::to_samples(&trim(a));
            let pb = fft::to_samples(&trim(b));
            let pc = fft::to_samples(&trim(c));
            let prod: Vec<Complex64> = pa
                .iter()
                .zip(&pb)
                .zip(&pc)
                .map(|((x, y), z)| x * y * z)
                .collect();
            let mut out = fft::to_coeffs(&prod);
            zero_above(&mut out, grid, keep);
            out
        }
    }
}

/// Quintic term `u⁴ v` on a factor-3 padded grid (alias-free for full-band inputs).
pub(crate) fn quintic_product_coeffs(
    u: &[Complex64],
    v: &[Complex64],
    grid: &SpaceGrid,
    rule: DealiasRule,
) -> Vec<Complex64> {
    let n = grid.points();
    let m = 3 * n;
    let pu = fft::to_samples(&pad_coeffs(u, m));
    let pv = fft::to_samples(&pad_coeffs(v, m));
    let prod: Vec<Complex64> = pu
        .iter()
        .zip(&pv)
        .map(|(x, y)| {
            let x2 = x * x;
            x2 * x2 * y
        })
        .collect();
    let mut out = unpad_coeffs(&fft::to_coeffs(&prod), n);
    zero_above(&mut out, grid, rule.retained_modes(n));
    out
}

/// Alias-free cube `f³` of a field, returned on the spectral side.
pub fn cube_dealiased(f: &ComplexField, rule: DealiasRule) -> ComplexField {
    let spec = f.spectral();
    let coeffs = triple_product_coeffs(
        spec.samples(),
        spec.samples(),
        spec.samples(),
        &f.grid(),
        rule,
    );
    ComplexField::new(f.grid(), Side::Spectral, coeffs)
}

/// Alias-free triple product `a·b·c` of spectral fields.
pub fn padded_triple(a: &ComplexField, b: &ComplexField, c: &ComplexField, rule: DealiasRule) -> ComplexField {
    assert_eq!(a.grid(), b.grid());
    assert_eq!(a.grid(), c.grid());
    let (sa, sb, sc) = (a.spectral(), b.spectral(), c.spectral());
    let coeffs = triple_product_coeffs(sa.samples(), sb.samples(), sc.samples(), &a.grid(), rule);
    ComplexField::new(a.grid(), Side::Spectral, coeffs)
}

/// Alias-free quintic product `u⁴·v` of spectral fields.
pub fn padded_quartic_derivative(u: &ComplexField, v: &ComplexField, rule: DealiasRule) -> ComplexField {
    assert_eq!(u.grid(), v.grid());
    let (su, sv) = (u.spectral(), v.spectral());
    let coeffs = quintic_product_coeffs(su.samples(), sv.samples(), &u.grid(), rule);
    ComplexField::new(u.grid(), Side::Spectral, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> SpaceGrid {
        SpaceGrid::new(8.0, 32).unwrap()
    }

    #[test]
    fn field_inside_band_is_fixed_point() {
        let g = grid();
        let mut f = ComplexField::zeros(g, Side::Spectral);
        let i1 = g.index_of_mode(3).unwrap();
        let i2 = g.index_of_mode(-8).unwrap(); // n/4 = 8 retained inclusive
        f.samples_mut()[i1] = Complex64::new(1.0, 0.5);
        f.samples_mut()[i2] = Complex64::new(-0.25, 0.0);
        let d = dealias(&f, DealiasRule::Truncate);
        for (a, b) in f.samples().iter().zip(d.samples()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn nyquist_only_field_maps_to_zero() {
        let g = grid();
        let mut f = ComplexField::zeros(g, Side::Spectral);
        let ny = g.points() / 2;
        f.samples_mut()[ny] = Complex64::new(1.0, 0.0);
        for rule in [DealiasRule::Pad2, DealiasRule::Truncate] {
            let d = dealias(&f, rule);
            assert!(d.samples().iter().all(|c| c.norm() == 0.0));
        }
    }

    #[test]
    fn padded_and_truncated_cubes_agree_on_retained_band() {
        let g = grid();
        // two-mode field inside |k| <= n/4
        let mut f = ComplexField::zeros(g, Side::Spectral);
        f.samples_mut()[g.index_of_mode(2).unwrap()] = Complex64::new(0.7, 0.1);
        f.samples_mut()[g.index_of_mode(-5).unwrap()] = Complex64::new(0.3, -0.4);
        let padded = cube_dealiased(&f, DealiasRule::Pad2);
        let truncated = cube_dealiased(&f, DealiasRule::Truncate);
        let keep = DealiasRule::Truncate.retained_modes(g.points());
        for idx in 0..g.points() {
            if g.mode_number(idx).abs() <= keep {
                let diff = (padded.samples()[idx] - truncated.samples()[idx]).norm();
                assert!(diff < 1e-12, "mode {} differs by {}", g.mode_number(idx), diff);
            }
        }
    }

    #[test]
    fn padded_cube_matches_analytic_coefficients() {
        // (e^{ikx} + e^{-ikx})³ = e^{3ikx} + 3e^{ikx} + 3e^{-ikx} + e^{-3ikx}
        let g = grid();
        let mut f = ComplexField::zeros(g, Side::Spectral);
        f.samples_mut()[g.index_of_mode(2).unwrap()] = Complex64::new(1.0, 0.0);
        f.samples_mut()[g.index_of_mode(-2).unwrap()] = Complex64::new(1.0, 0.0);
        let cube = cube_dealiased(&f, DealiasRule::Pad2);
        let expect = |k: i64| -> f64 {
            match k {
                6 | -6 => 1.0,
                2 | -2 => 3.0,
                _ => 0.0,
            }
        };
        for idx in 0..g.points() {
            let k = g.mode_number(idx);
            assert!(
                (cube.samples()[idx].re - expect(k)).abs() < 1e-12
                    && cube.samples()[idx].im.abs() < 1e-12
            );
        }
    }
}
