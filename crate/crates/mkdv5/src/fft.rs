//! Thin wrapper around `rustfft` with a per-thread plan cache.
//!
//! All transforms in this crate use the Fourier-coefficient convention
//!
//! ```text
//! c_k = (1/n) Σ_j u_j e^{-2πi jk/n},      u_j = Σ_k c_k e^{+2πi jk/n},
//! ```
//!
//! so `to_coeffs` of a constant field is a delta of mass 1 at k = 0 and the
//! inverse reproduces samples exactly. Plans are cached per (size, direction)
//! and every transform is single-threaded, hence bit-deterministic.

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

thread_local! {
    static PLANS: RefCell<HashMap<(usize, bool), Arc<dyn Fft<f64>>>> =
        RefCell::new(HashMap::new());
}

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    PLANS.with(|cell| {
        cell.borrow_mut()
            .entry((n, forward))
            .or_insert_with(|| {
                let dir = if forward {
                    FftDirection::Forward
                } else {
                    FftDirection::Inverse
                };
                FftPlanner::new().plan_fft(n, dir)
            })
            .clone()
    })
}

/// In-place unnormalized forward DFT: `X_k = Σ_j x_j e^{-2πi jk/n}`.
pub fn forward(buf: &mut [Complex64]) {
    plan(buf.len(), true).process(buf);
}

/// In-place unnormalized inverse DFT: `x_j = Σ_k X_k e^{+2πi jk/n}`.
pub fn inverse(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// Samples → Fourier coefficients (forward transform scaled by 1/n).
pub fn to_coeffs(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    forward(&mut buf);
    let scale = 1.0 / n as f64;
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// Fourier coefficients → samples (unnormalized inverse transform).
pub fn to_samples(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut buf = coeffs.to_vec();
    inverse(&mut buf);
    buf
}
