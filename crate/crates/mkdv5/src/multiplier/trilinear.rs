//! The sharp trilinear counterexample: triple convolution of the thin
//! indicator pair and the ratio ‖∂ₓ³(f³)‖_{X^{s,b−1}} / ‖f‖³_{X^{s,b}}.
//!
//! Everything happens in sheared coordinates (ξ, μ = τ − ξ⁵), where the
//! convolution acquires a frequency-dependent modulation offset: for
//! τ = τ₁ + τ₂, ξ = ξ₁ + ξ₂,
//!
//! ```text
//! μ = μ₁ + μ₂ + h(ξ₁, ξ₂),        h(ξ₁,ξ₂) = ξ₁⁵ + ξ₂⁵ − (ξ₁+ξ₂)⁵.
//! ```
//!
//! Support arithmetic confines f̃∗f̃∗f̃ to four ξ-islands near ±N and ±3N
//! (the threefold sumsets of ±[N, N+N^{−3/2}]); conjugate symmetry makes the
//! negative islands mirror images, so only two windows are computed:
//!
//! * the resonant window around (N, N⁵), which contains the rectangle R
//!   driving the lower bound — offsets there cancel to O(1) because the
//!   (+,+,−) resonance function vanishes at (N, N, −N);
//! * the far window around (3N, 3N⁵), sitting at modulation ≈ −(80/81)(3N)⁵,
//!   whose contribution to the X^{s,b−1} norm is suppressed by the
//!   modulation weight.
//!
//! Each pairwise convolution is exact in the μ direction (the indicator's
//! μ-profile convolves to the tent max(0, 2−|z|) analytically); only the ξ
//! integrals and the intermediate ν-profiles are discretized. Offsets that
//! would suffer catastrophic cancellation at μ ~ N⁵ are evaluated in factored
//! polynomial forms that stay exact in the small deviations.

use super::resonance::resonance_h3;
use super::MultiplierError;
use crate::spectral::japanese_bracket;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct TrilinearOptions {
    /// Columns across the pair spectrum's 2w-wide ξ support.
    pub n_pair_columns: usize,
    /// Midpoint nodes for the inner ξ₁ integral per column.
    pub n_d: usize,
    /// ν cells of the pair profiles (range [−2.5, 8]).
    pub n_nu_pair: usize,
    /// Output columns per window.
    pub n_out_columns: usize,
    /// Output μ (resp. ν) cells per window.
    pub n_mu_out: usize,
}

impl Default for TrilinearOptions {
    fn default() -> Self {
        TrilinearOptions {
            n_pair_columns: 192,
            n_d: 128,
            n_nu_pair: 512,
            n_out_columns: 144,
            n_mu_out: 640,
        }
    }
}

impl TrilinearOptions {
    /// Uniformly refine every discretization parameter (convergence checks).
    pub fn refined(&self, factor: usize) -> TrilinearOptions {
        TrilinearOptions {
            n_pair_columns: self.n_pair_columns * factor,
            n_d: self.n_d * factor,
            n_nu_pair: self.n_nu_pair * factor,
            n_out_columns: self.n_out_columns * factor,
            n_mu_out: self.n_mu_out * factor,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TrilinearRatio {
    pub n: f64,
    pub s: f64,
    pub b: f64,
    /// ‖∂ₓ³(f³)‖_{X^{s,b−1}}.
    pub numerator: f64,
    /// ‖f‖_{X^{s,b}}.
    pub f_norm: f64,
    /// numerator / f_norm³.
    pub ratio: f64,
    /// max of |f̃∗f̃∗f̃| over the resonant window, in units of N^{−3}.
    pub conv_peak_scaled: f64,
    /// Share of the squared numerator carried by the resonant window.
    pub resonant_share: f64,
}

/// Pair convolution χ_A ∗ χ_A stored as per-column ν-profiles relative to the
/// column's resonance center; prefix sums make boxcar integrals O(1).
struct PairSpectrum {
    xi_lo: f64, // = 2N
    d_xi: f64,
    nu_lo: f64,
    d_nu: f64,
    n_nu: usize,
    /// prefix[k][j] = ∫_{ν ≤ ν_j} profile_k  (trapezoid-free cumulative cells)
    prefix: Vec<Vec<f64>>,
}

impl PairSpectrum {
    fn column_center(&self, k: usize) -> f64 {
        self.xi_lo + (k as f64 + 0.5) * self.d_xi
    }

    /// ∫ profile_k(ν) dν over [lo, hi], linear in fractional cells.
    fn boxcar(&self, k: usize, lo: f64, hi: f64) -> f64 {
        let p = &self.prefix[k];
        let eval = |x: f64| -> f64 {
            let t = (x - self.nu_lo) / self.d_nu;
            if t <= 0.0 {
                return 0.0;
            }
            if t >= self.n_nu as f64 {
                return p[self.n_nu];
            }
            let i = t.floor() as usize;
            let frac = t - i as f64;
            p[i] + frac * (p[i + 1] - p[i])
        };
        (eval(hi) - eval(lo)).max(0.0)
    }
}

/// tent(z) = (χ_{[−1,1]} ∗ χ_{[−1,1]})(z) = max(0, 2 − |z|).
#[inline]
fn tent(z: f64) -> f64 {
    (2.0 - z.abs()).max(0.0)
}

fn build_pair(n_carrier: f64, opts: &TrilinearOptions) -> PairSpectrum {
    let w = n_carrier.powf(-1.5);
    let n_cols = opts.n_pair_columns;
    let d_xi = 2.0 * w / n_cols as f64;
    let (nu_lo, nu_hi) = (-2.5, 8.0);
    let n_nu = opts.n_nu_pair;
    let d_nu = (nu_hi - nu_lo) / n_nu as f64;

    let mut prefix = Vec::with_capacity(n_cols);
    for k in 0..n_cols {
        let xi_s = 2.0 * n_carrier + (k as f64 + 0.5) * d_xi;
        // overlap interval of ξ₁ is symmetric about m = ξS/2 with length ℓ
        let ell = (xi_s - 2.0 * n_carrier).min(2.0 * n_carrier + 2.0 * w - xi_s);
        let mut profile = vec![0.0f64; n_nu];
        if ell > 0.0 {
            let m = xi_s / 2.0;
            let dd = ell / opts.n_d as f64;
            for i in 0..opts.n_d {
                let d = -ell / 2.0 + (i as f64 + 0.5) * dd;
                // modulation offset relative to the column center, exact form
                let q = 20.0 * m.powi(3) * d * d + 10.0 * m * d.powi(4);
                // accumulate tent(ν − q) over the ν cells it touches
                let lo_cell = (((q - 2.0) - nu_lo) / d_nu).floor().max(0.0) as usize;
                let hi_cell = ((((q + 2.0) - nu_lo) / d_nu).ceil() as usize).min(n_nu);
                for j in lo_cell..hi_cell {
                    let nu = nu_lo + (j as f64 + 0.5) * d_nu;
                    profile[j] += tent(nu - q) * dd;
                }
            }
        }
        // cumulative integral: prefix[j] = ∫ up to cell boundary j
        let mut cum = Vec::with_capacity(n_nu + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        for &v in &profile {
            acc += v * d_nu;
            cum.push(acc);
        }
        prefix.push(cum);
    }

    PairSpectrum {
        xi_lo: 2.0 * n_carrier,
        d_xi,
        nu_lo,
        d_nu,
        n_nu,
        prefix,
    }
}

/// Rectangular value table over one output window.
struct Window {
    xi_lo: f64,
    d_xi: f64,
    n_xi: usize,
    mu_lo: f64, // μ for the resonant window, ν₃ for the far window
    d_mu: f64,
    n_mu: usize,
    values: Vec<f64>, // row-major [xi][mu]
}

impl Window {
    fn xi(&self, i: usize) -> f64 {
        self.xi_lo + (i as f64 + 0.5) * self.d_xi
    }

    fn mu(&self, j: usize) -> f64 {
        self.mu_lo + (j as f64 + 0.5) * self.d_mu
    }
}

/// Resonant window: T = 3 · (χ_A ∗ χ_A ∗ χ_{−A}) on ξ ∈ [N−w, N+2w].
fn convolve_resonant(pair: &PairSpectrum, n_carrier: f64, opts: &TrilinearOptions) -> Window {
    let w = n_carrier.powf(-1.5);
    let n_xi = opts.n_out_columns;
    let d_xi = 3.0 * w / n_xi as f64;
    let (mu_lo, mu_hi) = (-28.0, 12.0);
    let n_mu = opts.n_mu_out;
    let d_mu = (mu_hi - mu_lo) / n_mu as f64;
    let mut values = vec![0.0f64; n_xi * n_mu];

    for i in 0..n_xi {
        let xi = n_carrier - w + (i as f64 + 0.5) * d_xi;
        for k in 0..pair.prefix.len() {
            let xi_s = pair.column_center(k);
            let xi3 = xi - xi_s;
            if xi3 < -n_carrier - w || xi3 > -n_carrier {
                continue;
            }
            // total modulation offset c_S(ξS) + h(ξS, ξ₃), cancellation-free
            let phi = resonance_h3(xi_s / 2.0, xi_s / 2.0, xi3);
            for j in 0..n_mu {
                let mu = mu_lo + (j as f64 + 0.5) * d_mu;
                let centred = mu - phi;
                let v = pair.boxcar(k, centred - 1.0, centred + 1.0);
                if v > 0.0 {
                    values[i * n_mu + j] += 3.0 * v * pair.d_xi;
                }
            }
        }
    }

    Window {
        xi_lo: n_carrier - w,
        d_xi,
        n_xi,
        mu_lo,
        d_mu,
        n_mu,
        values,
    }
}

/// Offset of the far window relative to its center curve −(80/81)ξ⁵:
/// with e = ξ/3 and p = ξS/2 − ξ/3,
/// Ψ = 60e³p² − 60e²p³ + 90ep⁴ − 30p⁵ (exact expansion, stable in p).
#[inline]
fn far_offset(e: f64, p: f64) -> f64 {
    30.0 * (2.0 * e.powi(3) * p * p - 2.0 * e * e * p.powi(3) + 3.0 * e * p.powi(4) - p.powi(5))
}

/// Far window: T = χ_A ∗ χ_A ∗ χ_A on ξ ∈ [3N, 3N+3w], stored relative to
/// the center modulation c₃(ξ) = −(80/81)ξ⁵.
fn convolve_far(pair: &PairSpectrum, n_carrier: f64, opts: &TrilinearOptions) -> Window {
    let w = n_carrier.powf(-1.5);
    let n_xi = opts.n_out_columns;
    let d_xi = 3.0 * w / n_xi as f64;
    let (nu_lo, nu_hi) = (-8.0, 76.0);
    let n_mu = opts.n_mu_out;
    let d_mu = (nu_hi - nu_lo) / n_mu as f64;
    let mut values = vec![0.0f64; n_xi * n_mu];

    for i in 0..n_xi {
        let xi = 3.0 * n_carrier + (i as f64 + 0.5) * d_xi;
        let e = xi / 3.0;
        for k in 0..pair.prefix.len() {
            let xi_s = pair.column_center(k);
            let xi3 = xi - xi_s;
            if xi3 < n_carrier || xi3 > n_carrier + w {
                continue;
            }
            let p = xi_s / 2.0 - e;
            let psi = far_offset(e, p);
            for j in 0..n_mu {
                let nu3 = nu_lo + (j as f64 + 0.5) * d_mu;
                let centred = nu3 - psi;
                let v = pair.boxcar(k, centred - 1.0, centred + 1.0);
                if v > 0.0 {
                    values[i * n_mu + j] += v * pair.d_xi;
                }
            }
        }
    }

    Window {
        xi_lo: 3.0 * n_carrier,
        d_xi,
        n_xi,
        mu_lo: nu_lo,
        d_mu,
        n_mu,
        values,
    }
}

/// ∬ ξ⁶ ⟨ξ⟩^{2s} ⟨μ⟩^{2(b−1)} |T|² over a window; `center` maps ξ to the
/// absolute modulation of the window's μ = 0 line.
fn weighted_square_integral(win: &Window, s: f64, b: f64, center: impl Fn(f64) -> f64) -> f64 {
    let cell = win.d_xi * win.d_mu;
    let mut acc = 0.0;
    for i in 0..win.n_xi {
        let xi = win.xi(i);
        let wxi = xi.powi(6) * japanese_bracket(xi).powf(2.0 * s);
        let c = center(xi);
        for j in 0..win.n_mu {
            let t = win.values[i * win.n_mu + j];
            if t == 0.0 {
                continue;
            }
            let mu = c + win.mu(j);
            let wmu = japanese_bracket(mu).powf(2.0 * (b - 1.0));
            acc += wxi * wmu * t * t * cell;
        }
    }
    acc
}

/// Simpson quadrature of ∫_lo^hi f.
fn simpson(lo: f64, hi: f64, steps: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = (hi - lo) / steps as f64;
    let mut acc = 0.0;
    for i in 0..steps {
        let a = lo + i as f64 * h;
        acc += h / 6.0 * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h));
    }
    acc
}

/// ‖f‖_{X^{s,b}} of the indicator pair by direct quadrature:
/// (1/4π²) · 2 ∫_N^{N+w} ⟨ξ⟩^{2s} dξ · ∫_{−1}^{1} ⟨μ⟩^{2b} dμ.
pub(crate) fn sharp_indicator_xsb_quadrature(n_carrier: f64, s: f64, b: f64) -> f64 {
    let w = n_carrier.powf(-1.5);
    let xi_part = simpson(n_carrier, n_carrier + w, 512, |xi| {
        japanese_bracket(xi).powf(2.0 * s)
    });
    let mu_part = simpson(-1.0, 1.0, 512, |mu| japanese_bracket(mu).powf(2.0 * b));
    (2.0 * xi_part * mu_part / (4.0 * PI * PI)).sqrt()
}

/// Compute the sharp-example ratio at carrier N; see [`TrilinearRatio`].
pub fn trilinear_ratio(
    n_carrier: f64,
    s: f64,
    b: f64,
    opts: &TrilinearOptions,
) -> Result<TrilinearRatio, MultiplierError> {
    if !(n_carrier.is_finite() && n_carrier >= 2.0) {
        return Err(MultiplierError::GridInfeasible(format!(
            "carrier must be >= 2, got {n_carrier}"
        )));
    }
    if opts.n_pair_columns < 16 || opts.n_out_columns < 16 || opts.n_mu_out < 64 {
        return Err(MultiplierError::UnderResolved {
            need: 16,
            got: opts.n_pair_columns.min(opts.n_out_columns),
        });
    }

    let pair = build_pair(n_carrier, opts);
    let resonant = convolve_resonant(&pair, n_carrier, opts);
    let far = convolve_far(&pair, n_carrier, opts);

    let i_res = weighted_square_integral(&resonant, s, b, |_| 0.0);
    let i_far = weighted_square_integral(&far, s, b, |xi| -80.0 / 81.0 * xi.powi(5));
    // conjugate symmetry doubles both islands; product transform carries
    // (1/4π²)² and the norm another (1/4π²)
    let conv_scale = 1.0 / (16.0 * PI.powi(4));
    let numerator =
        ((2.0 * (i_res + i_far)) * conv_scale * conv_scale / (4.0 * PI * PI)).sqrt();

    let f_norm = sharp_indicator_xsb_quadrature(n_carrier, s, b);
    let ratio = numerator / f_norm.powi(3);

    // peak of |T| on the resonant window in units of N^{−3}
    let peak = resonant
        .values
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    let conv_peak_scaled = peak * n_carrier.powi(3);
    let resonant_share = i_res / (i_res + i_far).max(1e-300);

    Ok(TrilinearRatio {
        n: n_carrier,
        s,
        b,
        numerator,
        f_norm,
        ratio,
        conv_peak_scaled,
        resonant_share,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::fit::fit_log2_slope;
    use crate::multiplier::build_sharp_indicator;

    #[test]
    fn quadrature_norm_matches_gridded_indicator() {
        for n in [16.0, 128.0] {
            let (s, b) = (0.25, 0.51);
            let analytic = sharp_indicator_xsb_quadrature(n, s, b);
            let gridded = build_sharp_indicator(n, 32).unwrap().spectrum.xsb_norm(s, b);
            assert!(
                ((analytic - gridded) / analytic).abs() < 5e-3,
                "N={n}: {analytic} vs {gridded}"
            );
        }
    }

    #[test]
    fn convolution_peak_near_n_to_minus_three_is_stable() {
        let opts = TrilinearOptions::default();
        let mut peaks = Vec::new();
        for k in 4..=9 {
            let n = 2f64.powi(k);
            let r = trilinear_ratio(n, 0.25, 0.51, &opts).unwrap();
            peaks.push(r.conv_peak_scaled);
        }
        let max = peaks.iter().cloned().fold(f64::MIN, f64::max);
        let min = peaks.iter().cloned().fold(f64::MAX, f64::min);
        assert!(min > 0.5, "peak too small: {peaks:?}");
        assert!(max / min < 2.0, "peak unstable across sweep: {peaks:?}");
    }

    #[test]
    fn resonant_window_dominates_numerator() {
        let r = trilinear_ratio(32.0, 0.25, 0.51, &TrilinearOptions::default()).unwrap();
        assert!(r.resonant_share > 0.99, "share {}", r.resonant_share);
    }

    #[test]
    fn ratio_slope_matches_two_times_gap_at_quarter() {
        let opts = TrilinearOptions::default();
        let pts: Vec<(f64, f64)> = (4..=9)
            .map(|k| {
                let n = 2f64.powi(k);
                (n, trilinear_ratio(n, 0.25, 0.51, &opts).unwrap().ratio)
            })
            .collect();
        let fit = fit_log2_slope("ratio", &pts).unwrap();
        assert!(
            (fit.slope - 1.0).abs() < 0.15,
            "slope {} (points {:?})",
            fit.slope,
            pts
        );
    }

    #[test]
    fn ratio_flat_at_three_quarters() {
        let opts = TrilinearOptions::default();
        let pts: Vec<(f64, f64)> = (4..=9)
            .map(|k| {
                let n = 2f64.powi(k);
                (n, trilinear_ratio(n, 0.75, 0.51, &opts).unwrap().ratio)
            })
            .collect();
        let fit = fit_log2_slope("ratio", &pts).unwrap();
        assert!(fit.slope.abs() < 0.15, "slope {}", fit.slope);
    }

    #[test]
    fn ratio_stable_under_refinement() {
        let n = 16.0;
        let (s, b) = (0.25, 0.51);
        let coarse = trilinear_ratio(n, s, b, &TrilinearOptions::default()).unwrap();
        let fine = trilinear_ratio(n, s, b, &TrilinearOptions::default().refined(2)).unwrap();
        let rel = ((coarse.ratio - fine.ratio) / fine.ratio).abs();
        assert!(rel < 0.02, "refinement moved ratio by {rel}");
    }
}
