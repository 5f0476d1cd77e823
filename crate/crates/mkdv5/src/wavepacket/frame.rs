//! Carrier frame: the change of variables tying the envelope coordinates to
//! the fifth-order linear flow, and the packet parameter set.

use super::WavePacketError;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Lower and upper ends of the admissible Sobolev range (−7/24, 3/4).
pub const SOBOLEV_LOWER: f64 = -7.0 / 24.0;
pub const SOBOLEV_UPPER: f64 = 0.75;

/// (s, y) = (t, x/√(10N³) + √(5/2)·N^{5/2}·t)
pub fn change_of_variables(t: f64, x: f64, n: f64) -> (f64, f64) {
    let frame = CarrierFrame::new(n);
    (t, frame.envelope_coordinate(t, x))
}

/// Everything derived from the carrier frequency N: the envelope scale
/// β = (10N³)^{−1/2}, the envelope drift γ = √(5/2)·N^{5/2} (the group speed
/// of the carrier in envelope coordinates), and the transfer amplitude
/// 2/√(3N³) that makes the cubic self-interaction close at the carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierFrame {
    n: f64,
}

impl CarrierFrame {
    pub fn new(n: f64) -> Self {
        assert!(n > 0.0 && n.is_finite(), "carrier must be positive");
        CarrierFrame { n }
    }

    pub fn carrier(&self) -> f64 {
        self.n
    }

    /// β = 1/√(10N³): dy/dx.
    pub fn beta(&self) -> f64 {
        1.0 / (10.0 * self.n.powi(3)).sqrt()
    }

    /// γ = √(5/2)·N^{5/2}: dy/dt.
    pub fn gamma(&self) -> f64 {
        (2.5f64).sqrt() * self.n.powf(2.5)
    }

    /// Packet amplitude 2/√(3N³).
    pub fn amplitude(&self) -> f64 {
        2.0 / (3.0 * self.n.powi(3)).sqrt()
    }

    /// y(t, x) = βx + γt.
    pub fn envelope_coordinate(&self, t: f64, x: f64) -> f64 {
        self.beta() * x + self.gamma() * t
    }

    /// x(t, y) = (y − γt)/β; inverse of [`Self::envelope_coordinate`].
    pub fn physical_coordinate(&self, t: f64, y: f64) -> f64 {
        (y - self.gamma() * t) / self.beta()
    }

    /// Carrier phase Nx + N⁵t.
    pub fn phase(&self, t: f64, x: f64) -> f64 {
        self.n * x + self.n.powi(5) * t
    }
}

/// Parameters of one wave-packet construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavePacketParams {
    /// Carrier frequency N (grid-commensurate in actual runs).
    pub carrier_n: f64,
    /// Sobolev exponent s of the measured norms.
    pub sobolev_s: f64,
    /// Amplitude scale ε.
    pub amplitude_eps: f64,
    /// Perturbation scale δ (must be ≪ ε).
    pub perturbation_delta: f64,
    /// Rescaling factor λ; `auto` derives it from (N, s).
    pub rescale_lambda: f64,
    /// Envelope smoothness control K (H^K bounds on the envelope).
    pub envelope_smoothness_k: u32,
}

impl WavePacketParams {
    /// λ(N, s) = N^{(3/4−s)/(1/2+s)}, the unique power making the rescaled
    /// packet's Hˢ size independent of N (λ^{s+1/2} N^{s−3/4} = 1).
    pub fn lambda_for(n: f64, s: f64) -> f64 {
        n.powf((0.75 - s) / (0.5 + s))
    }

    pub fn in_theorem_range(s: f64) -> bool {
        s > SOBOLEV_LOWER && s < SOBOLEV_UPPER
    }

    /// Build with λ auto-derived; enforces the admissible s range and δ ≪ ε.
    pub fn auto(
        carrier_n: f64,
        sobolev_s: f64,
        amplitude_eps: f64,
        perturbation_delta: f64,
        envelope_smoothness_k: u32,
    ) -> Result<Self, WavePacketError> {
        if !Self::in_theorem_range(sobolev_s) {
            return Err(WavePacketError::SobolevOutOfRange(sobolev_s));
        }
        if !(perturbation_delta >= 0.0 && perturbation_delta < amplitude_eps) {
            return Err(WavePacketError::BadPerturbation {
                delta: perturbation_delta,
                eps: amplitude_eps,
            });
        }
        Ok(WavePacketParams {
            carrier_n,
            sobolev_s,
            amplitude_eps,
            perturbation_delta,
            rescale_lambda: Self::lambda_for(carrier_n, sobolev_s),
            envelope_smoothness_k,
        })
    }
}

/// Design a commensurate carrier/target pair: find the carrier N nearest the
/// request such that
///
/// * `N = 2πk/L_x` for integer k (the carrier is exactly periodic), and
/// * `β(N)·L_x = wraps·L_env` exactly (the envelope coordinate advances an
///   integer number of envelope periods across the box),
///
/// which pins `L_x = [wraps·L_env·√10·(2πk)^{3/2}]^{2/5}`. Returns
/// (N, L_x, k).
pub fn design_carrier_grid(n_request: f64, l_env: f64, wraps: usize) -> (f64, f64, u64) {
    assert!(n_request > 0.0 && l_env > 0.0 && wraps >= 1);
    let lx_of = |k: f64| -> f64 {
        (wraps as f64 * l_env * 10f64.sqrt() * (TAU * k).powf(1.5)).powf(0.4)
    };
    let n_of = |k: f64| TAU * k / lx_of(k);
    // n_of is monotone increasing in k: solve n_of(k) = n_request
    // n(k) = 2πk / C k^{3/5} ∝ k^{2/5}  ⇒ k ≈ (n/C')^{5/2}
    let mut k_guess = 1.0_f64;
    for _ in 0..64 {
        let cur = n_of(k_guess);
        if cur <= 0.0 {
            break;
        }
        let next = k_guess * (n_request / cur).powf(2.5);
        if (next - k_guess).abs() < 0.5 {
            k_guess = next;
            break;
        }
        k_guess = next;
    }
    // scan the nearby integers for the closest carrier
    let k0 = k_guess.round().max(1.0) as u64;
    let mut best = (f64::INFINITY, k0);
    for k in k0.saturating_sub(2)..=k0 + 2 {
        if k == 0 {
            continue;
        }
        let diff = (n_of(k as f64) - n_request).abs();
        if diff < best.0 {
            best = (diff, k);
        }
    }
    let k = best.1;
    let lx = lx_of(k as f64);
    (TAU * k as f64 / lx, lx, k)
}
