//! Sheared space-time spectra.
//!
//! Near the dispersion curve τ = ξ⁵ the natural coordinates are
//! `(ξ, μ = τ − ξ⁵)`: the shear has unit Jacobian and turns curve-hugging
//! sets (thickness O(1) in μ at heights τ ~ N⁵) into axis-aligned boxes. A
//! [`ShearedSpectrum`] stores continuum values of ũ on one or more
//! rectangular (ξ, μ) windows; rectangular grids could never resolve these
//! sets directly.

use super::norms::japanese_bracket;
use super::SpectralError;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Axis-aligned window in sheared coordinates with uniform cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShearedWindow {
    pub xi_min: f64,
    pub xi_max: f64,
    pub n_xi: usize,
    pub mu_min: f64,
    pub mu_max: f64,
    pub n_mu: usize,
}

impl ShearedWindow {
    pub fn d_xi(&self) -> f64 {
        (self.xi_max - self.xi_min) / self.n_xi as f64
    }

    pub fn d_mu(&self) -> f64 {
        (self.mu_max - self.mu_min) / self.n_mu as f64
    }

    /// Cell-center coordinates.
    pub fn xi(&self, i: usize) -> f64 {
        self.xi_min + (i as f64 + 0.5) * self.d_xi()
    }

    pub fn mu(&self, j: usize) -> f64 {
        self.mu_min + (j as f64 + 0.5) * self.d_mu()
    }

    pub fn cells(&self) -> usize {
        self.n_xi * self.n_mu
    }

    /// The window reflected through the origin (ξ, μ) → (−ξ, −μ).
    pub fn reflected(&self) -> ShearedWindow {
        ShearedWindow {
            xi_min: -self.xi_max,
            xi_max: -self.xi_min,
            n_xi: self.n_xi,
            mu_min: -self.mu_max,
            mu_max: -self.mu_min,
            n_mu: self.n_mu,
        }
    }
}

/// Space-time spectrum sampled on sheared windows; values are continuum ũ
/// values at cell centers, row-major over (ξ, μ).
#[derive(Debug, Clone)]
pub struct ShearedSpectrum {
    windows: Vec<(ShearedWindow, Vec<Complex64>)>,
}

impl ShearedSpectrum {
    pub fn new() -> Self {
        ShearedSpectrum { windows: Vec::new() }
    }

    pub fn push_window(&mut self, window: ShearedWindow, values: Vec<Complex64>) {
        assert_eq!(values.len(), window.cells());
        self.windows.push((window, values));
    }

    pub fn push_window_fn(&mut self, window: ShearedWindow, f: impl Fn(f64, f64) -> Complex64) {
        let mut values = Vec::with_capacity(window.cells());
        for i in 0..window.n_xi {
            for j in 0..window.n_mu {
                values.push(f(window.xi(i), window.mu(j)));
            }
        }
        self.push_window(window, values);
    }

    pub fn windows(&self) -> &[(ShearedWindow, Vec<Complex64>)] {
        &self.windows
    }

    /// Require at least `need` cells across each dimension of every window.
    pub fn check_resolution(&self, need: usize) -> Result<(), SpectralError> {
        for (w, _) in &self.windows {
            let got = w.n_xi.min(w.n_mu);
            if got < need {
                return Err(SpectralError::UnderResolved { need, got });
            }
        }
        Ok(())
    }

    /// Quadrature of ∬ |ũ|² dξ dμ (sheared coordinates have unit Jacobian).
    pub fn mass(&self) -> f64 {
        self.windows
            .iter()
            .map(|(w, vals)| {
                let cell = w.d_xi() * w.d_mu();
                vals.iter().map(|v| v.norm_sqr()).sum::<f64>() * cell
            })
            .sum()
    }

    /// Area of the support (cells with nonzero value).
    pub fn support_area(&self) -> f64 {
        self.windows
            .iter()
            .map(|(w, vals)| {
                let cell = w.d_xi() * w.d_mu();
                vals.iter().filter(|v| v.norm_sqr() > 0.0).count() as f64 * cell
            })
            .sum()
    }

    /// X^{s,b} norm: `( (1/4π²) ∬ ⟨ξ⟩^{2s} ⟨μ⟩^{2b} |ũ|² dξ dμ )^{1/2}`,
    /// consistent with [`super::SpaceTimeField::xsb_norm`].
    pub fn xsb_norm(&self, s: f64, b: f64) -> f64 {
        let mut acc = 0.0;
        for (w, vals) in &self.windows {
            let cell = w.d_xi() * w.d_mu();
            for i in 0..w.n_xi {
                let ws = japanese_bracket(w.xi(i)).powf(2.0 * s);
                for j in 0..w.n_mu {
                    let wb = japanese_bracket(w.mu(j)).powf(2.0 * b);
                    acc += ws * wb * vals[i * w.n_mu + j].norm_sqr() * cell;
                }
            }
        }
        (acc / (4.0 * PI * PI)).sqrt()
    }

    /// True when windows come in (ξ, μ) → (−ξ, −μ) pairs with conjugate
    /// values, i.e. the underlying physical field is real.
    pub fn is_conjugate_symmetric(&self, tol: f64) -> bool {
        'outer: for (w, vals) in &self.windows {
            let refl = w.reflected();
            for (w2, vals2) in &self.windows {
                if (w2.xi_min - refl.xi_min).abs() < 1e-12 * (1.0 + refl.xi_min.abs())
                    && (w2.mu_min - refl.mu_min).abs() < 1e-9
                    && w2.n_xi == refl.n_xi
                    && w2.n_mu == refl.n_mu
                {
                    // value at (ξ_i, μ_j) must equal conj(value at (−ξ_i, −μ_j))
                    for i in 0..w.n_xi {
                        for j in 0..w.n_mu {
                            let a = vals[i * w.n_mu + j];
                            let b = vals2[(w.n_xi - 1 - i) * w.n_mu + (w.n_mu - 1 - j)];
                            if (a - b.conj()).norm() > tol {
                                return false;
                            }
                        }
                    }
                    continue 'outer;
                }
            }
            return false; // no reflected partner window
        }
        true
    }
}

impl Default for ShearedSpectrum {
    fn default() -> Self {
        Self::new()
    }
}
