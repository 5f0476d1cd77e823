//! Hˢ norm quadratures with continuum normalization.

use super::field::{ComplexField, RealField};

/// ⟨ξ⟩ = (1 + ξ²)^{1/2}.
#[inline]
pub fn japanese_bracket(xi: f64) -> f64 {
    (1.0 + xi * xi).sqrt()
}

/// L² norm, equal on both sides (Parseval): `(L Σ|c_k|²)^{1/2}`.
pub fn l2_norm(f: &ComplexField) -> f64 {
    let spec = f.spectral();
    let sum: f64 = spec.samples().iter().map(|c| c.norm_sqr()).sum();
    (f.grid().length() * sum).sqrt()
}

/// Sobolev norm `(L Σ ⟨ξ_k⟩^{2s} |c_k|²)^{1/2}`.
///
/// With this normalization a single mode `e^{iξ_k x}/√L` of unit L² norm has
/// Hˢ norm exactly `⟨ξ_k⟩ˢ`, and values converge under grid refinement to the
/// continuum `( (1/2π) ∫ ⟨ξ⟩^{2s} |û|² dξ )^{1/2}`.
pub fn sobolev_norm(f: &ComplexField, s: f64) -> f64 {
    sobolev_norm_rescaled(f, s, 1.0)
}

/// Sobolev norm of the rescaled field `λ f(λ·)` living on the grid `[0, L/λ)`,
/// evaluated exactly from the original coefficients:
///
/// ```text
/// ‖λ f(λ·)‖²_{Hˢ} = λ L Σ_k ⟨λ ξ_k⟩^{2s} |c_k|².
/// ```
///
/// Amplitude contributes λ², the measure 1/λ, and each wavenumber dilates to
/// λξ_k. For λ = 1 this is the plain Sobolev norm.
pub fn sobolev_norm_rescaled(f: &ComplexField, s: f64, lambda: f64) -> f64 {
    assert!(lambda > 0.0, "rescale factor must be positive");
    let spec = f.spectral();
    let grid = f.grid();
    let mut sum = 0.0;
    for (idx, c) in spec.samples().iter().enumerate() {
        let w = japanese_bracket(lambda * grid.wavenumber(idx)).powf(2.0 * s);
        sum += w * c.norm_sqr();
    }
    (lambda * grid.length() * sum).sqrt()
}

impl ComplexField {
    pub fn l2_norm(&self) -> f64 {
        l2_norm(self)
    }

    pub fn sobolev_norm(&self, s: f64) -> f64 {
        sobolev_norm(self, s)
    }
}

impl RealField {
    pub fn l2_norm(&self) -> f64 {
        l2_norm(&self.to_complex())
    }

    pub fn sobolev_norm(&self, s: f64) -> f64 {
        sobolev_norm(&self.to_complex(), s)
    }

    pub fn sobolev_norm_rescaled(&self, s: f64, lambda: f64) -> f64 {
        sobolev_norm_rescaled(&self.to_complex(), s, lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::SpaceGrid;
    use num_complex::Complex64;

    #[test]
    fn normalized_single_mode_has_bracket_norm() {
        let g = SpaceGrid::new(16.0, 64).unwrap();
        for k in [0i64, 1, 5, -7] {
            let amp = Complex64::new(1.0 / g.length().sqrt(), 0.0);
            let f = ComplexField::single_mode(g, k, amp);
            assert!((f.l2_norm() - 1.0).abs() < 1e-12);
            let xi = 2.0 * std::f64::consts::PI * k as f64 / g.length();
            for s in [0.25, 0.75, 2.0, -0.5] {
                let expected = japanese_bracket(xi).powf(s);
                assert!(
                    (f.sobolev_norm(s) - expected).abs() < 1e-12 * expected.max(1.0),
                    "k={k} s={s}"
                );
            }
        }
    }

    #[test]
    fn s_zero_collapses_to_l2() {
        let g = SpaceGrid::new(10.0, 32).unwrap();
        let f = ComplexField::from_fn(g, |x| Complex64::new((x * 0.9).sin(), (x * 0.4).cos()));
        assert!((f.sobolev_norm(0.0) - f.l2_norm()).abs() < 1e-12 * f.l2_norm());
    }

    #[test]
    fn gaussian_h34_matches_continuum_quadrature() {
        // Envelope g(x) = e^{-(x-c)²/(2σ²)} on a window wide enough that the
        // periodization error is negligible; oracle is a fine Simpson
        // quadrature of (1/2π)∫⟨ξ⟩^{3/2} |ĝ(ξ)|² dξ with the analytic
        // transform ĝ(ξ) = σ√(2π) e^{-σ²ξ²/2}.
        let sigma = 0.8_f64;
        let g = SpaceGrid::new(32.0, 512).unwrap();
        let c = g.length() / 2.0;
        let f = ComplexField::from_fn(g, |x| {
            Complex64::new((-((x - c) / sigma).powi(2) / 2.0).exp(), 0.0)
        });
        let s = 0.75;
        let value = f.sobolev_norm(s);

        let ghat = |xi: f64| sigma * (2.0 * std::f64::consts::PI).sqrt() * (-sigma * sigma * xi * xi / 2.0).exp();
        let integrand = |xi: f64| japanese_bracket(xi).powf(2.0 * s) * ghat(xi).powi(2);
        let (lo, hi, steps) = (-40.0 / sigma, 40.0 / sigma, 200_000);
        let h = (hi - lo) / steps as f64;
        let mut acc = 0.0;
        for i in 0..steps {
            let a = lo + i as f64 * h;
            acc += h / 6.0 * (integrand(a) + 4.0 * integrand(a + 0.5 * h) + integrand(a + h));
        }
        let oracle = (acc / (2.0 * std::f64::consts::PI)).sqrt();
        assert!(
            (value - oracle).abs() / oracle < 1e-3,
            "grid {} vs continuum {}",
            value,
            oracle
        );
    }

    #[test]
    fn sobolev_monotone_in_s() {
        let g = SpaceGrid::new(8.0, 32).unwrap();
        let f = ComplexField::from_fn(g, |x| Complex64::new((1.3 * x).sin(), 0.2 * (2.0 * x).cos()));
        let mut prev = f.sobolev_norm(-1.0);
        for i in 1..=8 {
            let s = -1.0 + i as f64 * 0.5;
            let cur = f.sobolev_norm(s);
            assert!(cur >= prev - 1e-12);
            prev = cur;
        }
    }

    #[test]
    fn rescaled_norm_matches_closed_form_on_single_mode() {
        // ‖λ e^{ik λ x}‖_{Hˢ} on [0, L/λ) = λ^{1/2} ⟨λk⟩ˢ/⟨k⟩ˢ × ‖e^{ikx}‖_{Hˢ}
        let g = SpaceGrid::new(16.0, 64).unwrap();
        let f = ComplexField::single_mode(g, 3, Complex64::new(1.0, 0.0));
        let xi = 2.0 * std::f64::consts::PI * 3.0 / g.length();
        for lambda in [1.0, 2.0, 17.5] {
            for s in [-0.25, 0.5, 1.0] {
                let got = sobolev_norm_rescaled(&f, s, lambda);
                let expected = lambda.sqrt()
                    * (japanese_bracket(lambda * xi) / japanese_bracket(xi)).powf(s)
                    * f.sobolev_norm(s);
                assert!((got - expected).abs() < 1e-10 * expected);
            }
        }
    }
}
