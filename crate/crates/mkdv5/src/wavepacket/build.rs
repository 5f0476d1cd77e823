//! Building the approximate solution U_ap on the physical grid.
//!
//! `U_ap(t, x) = (2/√(3N³)) · Re[ e^{iNx} e^{iN⁵t} u(s, y) ]` with the
//! envelope u taken from a stored cubic-NLS trajectory and evaluated at
//! y(t, x) by trigonometric interpolation. The target grid is designed (see
//! [`super::design_carrier_grid`]) so that the envelope coordinate advances an
//! integer number of envelope periods across the box; interpolation then
//! reduces to a zero-padded FFT with a phase twist, which is exact for the
//! band-limited envelope and costs O(n_x log n_x) per field.

use super::frame::CarrierFrame;
use super::WavePacketError;
use crate::evolution::{ComplexTrajectory, NlsSign};
use crate::fft;
use crate::spectral::{RealField, SpaceGrid};
use num_complex::Complex64;

/// Exact trig interpolation of envelope-grid fields onto the packet grid.
#[derive(Debug, Clone)]
pub struct EnvelopeSampler {
    env_grid: SpaceGrid,
    target: SpaceGrid,
    /// β·L_x / L_env: envelope periods per box crossing.
    wraps: usize,
    frame: CarrierFrame,
}

impl EnvelopeSampler {
    pub fn new(
        env_grid: SpaceGrid,
        target: SpaceGrid,
        n_carrier: f64,
    ) -> Result<Self, WavePacketError> {
        let frame = CarrierFrame::new(n_carrier);
        let wraps_f = frame.beta() * target.length() / env_grid.length();
        let wraps = wraps_f.round();
        if wraps < 1.0 || (wraps_f - wraps).abs() > 1e-6 {
            return Err(WavePacketError::IncommensurateWindows(wraps_f));
        }
        let wraps = wraps as usize;
        // every envelope mode j maps to target mode j·wraps; they must fit
        if env_grid.points() * wraps > target.points() {
            return Err(WavePacketError::EnvelopeUnderResolved {
                need: env_grid.points() * wraps,
                have: target.points() / wraps.max(1),
            });
        }
        Ok(EnvelopeSampler {
            env_grid,
            target,
            wraps,
            frame,
        })
    }

    pub fn wraps(&self) -> usize {
        self.wraps
    }

    /// Values of the envelope (given by spectral coefficients on the envelope
    /// grid) at y(t, x_i) for every target point x_i.
    pub fn sample(&self, env_coeffs: &[Complex64], t: f64) -> Vec<Complex64> {
        let n_env = self.env_grid.points();
        let n_x = self.target.points();
        assert_eq!(env_coeffs.len(), n_env);

        // y(t, x_i) = offset + i·(wraps·L_env/n_x); mode j of the envelope
        // contributes e^{i k_j offset} at target DFT index j·wraps.
        let offset = self.frame.gamma() * t;
        let twist_unit = offset / self.env_grid.length(); // offset in envelope periods
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n_x];
        for idx in 0..n_env {
            let j = self.env_grid.mode_number(idx);
            let twist = Complex64::from_polar(
                1.0,
                std::f64::consts::TAU * (j as f64) * twist_unit.rem_euclid(1.0),
            );
            let target_idx = (j * self.wraps as i64).rem_euclid(n_x as i64) as usize;
            coeffs[target_idx] += env_coeffs[idx] * twist;
        }
        fft::to_samples(&coeffs)
    }
}

/// Options controlling packet construction.
#[derive(Debug, Clone)]
pub struct WavePacketOptions {
    /// Verify the envelope decays at the window edges (mass in the outer 10%
    /// of the window below 1e-8 of the total). Disable for envelopes that are
    /// genuinely periodic (plateau families).
    pub check_envelope_confinement: bool,
    /// Sign of the cubic NLS the envelope solves; fixes the matched equation.
    pub nls_sign: NlsSign,
    /// When false the envelope is treated as a linear Schrödinger solution
    /// and residuals omit the cubic terms.
    pub nonlinear_envelope: bool,
}

impl Default for WavePacketOptions {
    fn default() -> Self {
        WavePacketOptions {
            check_envelope_confinement: true,
            nls_sign: NlsSign::PlusCubic,
            nonlinear_envelope: true,
        }
    }
}

/// An NLS envelope trajectory bound to a carrier and target grid.
#[derive(Debug)]
pub struct WavePacket {
    pub frame: CarrierFrame,
    pub envelope: ComplexTrajectory,
    pub target: SpaceGrid,
    pub options: WavePacketOptions,
    sampler: EnvelopeSampler,
}

impl WavePacket {
    pub fn new(
        envelope: ComplexTrajectory,
        n_carrier: f64,
        target: SpaceGrid,
        options: WavePacketOptions,
    ) -> Result<Self, WavePacketError> {
        // cubes put energy at 3N: it must live inside the resolved band
        let k_max = target.nyquist_wavenumber();
        if 3.0 * n_carrier > k_max {
            return Err(WavePacketError::CarrierUnresolved {
                three_n: 3.0 * n_carrier,
                k_max,
            });
        }
        // e^{iNx} must be exactly periodic on the box
        let carrier_index = n_carrier * target.length() / std::f64::consts::TAU;
        if (carrier_index - carrier_index.round()).abs() > 1e-6 {
            return Err(WavePacketError::IncommensurateCarrier {
                m: n_carrier,
                fundamental: target.fundamental_wavenumber(),
            });
        }
        let sampler = EnvelopeSampler::new(envelope.grid, target, n_carrier)?;
        let wp = WavePacket {
            frame: CarrierFrame::new(n_carrier),
            envelope,
            target,
            options,
            sampler,
        };
        if wp.options.check_envelope_confinement {
            wp.check_confinement()?;
        }
        Ok(wp)
    }

    fn check_confinement(&self) -> Result<(), WavePacketError> {
        let Some(state) = self.envelope.states.first() else {
            return Ok(());
        };
        let grid = self.envelope.grid;
        let margin = grid.points() / 10;
        let total: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        if total == 0.0 {
            return Ok(());
        }
        let edge: f64 = state[..margin]
            .iter()
            .chain(state[grid.points() - margin..].iter())
            .map(|z| z.norm_sqr())
            .sum();
        if edge / total > 1e-8 {
            return Err(WavePacketError::EnvelopeEscaped(edge / total));
        }
        Ok(())
    }

    pub fn sampler(&self) -> &EnvelopeSampler {
        &self.sampler
    }

    /// Spectral coefficients of the stored envelope at time t.
    pub(crate) fn envelope_coeffs_at(&self, t: f64) -> Result<Vec<Complex64>, WavePacketError> {
        let idx = self.envelope.nearest_index(t);
        let stored = self.envelope.times[idx];
        if (stored - t).abs() > 1e-9 * (1.0 + t.abs()) {
            return Err(WavePacketError::EnvelopeTimeMissing(t, stored));
        }
        Ok(fft::to_coeffs(&self.envelope.states[idx]))
    }

    /// Carrier phases e^{i·mult·(Nx + N⁵t)} on the target grid.
    ///
    /// N is grid-commensurate, so N·x_i = 2π·k_N·i/n_x with integer k_N; the
    /// spatial phase is reduced in exact integer arithmetic. Evaluating
    /// N·x_i in floating point instead would leave ~|Nx|·ε phase jitter,
    /// which the fifth spectral derivative amplifies into visible noise.
    pub(crate) fn carrier(&self, t: f64, mult: i32) -> Vec<Complex64> {
        let n = self.frame.carrier();
        let n_x = self.target.points() as i64;
        let k_carrier =
            (n * self.target.length() / std::f64::consts::TAU).round() as i64 * mult as i64;
        let phase_t =
            (mult as f64 * n.powi(5) * t).rem_euclid(std::f64::consts::TAU);
        (0..n_x)
            .map(|i| {
                let turns = (k_carrier * i).rem_euclid(n_x);
                let phase = std::f64::consts::TAU * turns as f64 / n_x as f64 + phase_t;
                Complex64::from_polar(1.0, phase)
            })
            .collect()
    }

    /// U_ap(t) on the target grid.
    pub fn build(&self, t: f64) -> Result<RealField, WavePacketError> {
        let coeffs = self.envelope_coeffs_at(t)?;
        let env = self.sampler.sample(&coeffs, t);
        let carrier = self.carrier(t, 1);
        let amp = self.frame.amplitude();
        let samples: Vec<f64> = env
            .iter()
            .zip(&carrier)
            .map(|(u, c)| amp * (u * c).re)
            .collect();
        Ok(RealField::new(self.target, samples))
    }

}

/// One-shot convenience wrapper for [`WavePacket::build`].
pub fn build_u_ap(
    envelope: &ComplexTrajectory,
    n_carrier: f64,
    t: f64,
    target: SpaceGrid,
) -> Result<RealField, WavePacketError> {
    let wp = WavePacket::new(
        envelope.clone(),
        n_carrier,
        target,
        WavePacketOptions::default(),
    )?;
    wp.build(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::SolverMeta;
    use crate::spectral::{ComplexField, DealiasRule, Side};
    use crate::wavepacket::design_carrier_grid;

    /// A fake envelope trajectory holding one state at t = 0.
    fn envelope_from_fn(
        grid: SpaceGrid,
        f: impl Fn(f64) -> Complex64,
    ) -> ComplexTrajectory {
        let state: Vec<Complex64> = grid.xs().map(f).collect();
        ComplexTrajectory {
            grid,
            times: vec![0.0],
            states: vec![state],
            meta: SolverMeta {
                dt: 1.0,
                steps: 0,
                dealias: DealiasRule::Pad2,
                max_imag_residue: 0.0,
            },
        }
    }

    fn setup(n_req: f64) -> (f64, SpaceGrid, SpaceGrid) {
        let l_env = 12.0;
        let (n, lx, _) = design_carrier_grid(n_req, l_env, 1);
        let env_grid = SpaceGrid::new(l_env, 64).unwrap();
        // resolve 3N with margin
        let n_x = {
            let need = (lx * (3.2 * n) / std::f64::consts::PI).ceil() as usize;
            need.next_power_of_two()
        };
        let target = SpaceGrid::new(lx, n_x).unwrap();
        (n, env_grid, target)
    }

    #[test]
    fn zero_envelope_gives_zero_packet() {
        let (n, env_grid, target) = setup(8.0);
        let env = envelope_from_fn(env_grid, |_| Complex64::new(0.0, 0.0));
        let u = build_u_ap(&env, n, 0.0, target).unwrap();
        assert!(u.samples().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn constant_envelope_at_origin_matches_amplitude() {
        let (n, env_grid, target) = setup(8.0);
        let env = envelope_from_fn(env_grid, |_| Complex64::new(1.0, 0.0));
        let mut opts = WavePacketOptions::default();
        opts.check_envelope_confinement = false; // constant envelope is periodic
        let wp = WavePacket::new(env, n, target, opts).unwrap();
        let u = wp.build(0.0).unwrap();
        // U_ap(0, 0) = (2/√(3N³))·Re[e^{0}·1]
        let expected = 2.0 / (3.0 * n.powi(3)).sqrt();
        assert!((u.samples()[0] - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn packet_is_real_and_l2_matches_quadrature() {
        let (n, env_grid, target) = setup(8.0);
        let c = env_grid.length() / 2.0;
        let env = envelope_from_fn(env_grid, |y| {
            Complex64::new((-((y - c) / 0.8).powi(2) / 2.0).exp(), 0.0)
        });
        let env_field = ComplexField::new(env_grid, Side::Physical, env.states[0].clone());
        let wp = WavePacket::new(env, n, target, WavePacketOptions::default()).unwrap();
        let u = wp.build(0.0).unwrap();

        // reality is structural; conjugate symmetry of the spectrum follows
        assert!(u.conjugate_symmetry_residual() < 1e-12);

        // ‖U_ap(0)‖_{L²ₓ} = (2/√(3N³))·(10N³)^{1/4}·‖u‖_{L²_y}/√2 up to the
        // oscillatory cross term, which is exponentially small for a smooth
        // envelope against carrier 2N
        let amp = 2.0 / (3.0 * n.powi(3)).sqrt();
        let predicted = amp * (10.0 * n.powi(3)).powf(0.25) * env_field.l2_norm()
            / 2f64.sqrt();
        let measured = u.l2_norm();
        assert!(
            ((measured - predicted) / predicted).abs() < 1e-3,
            "L2: measured {measured}, predicted {predicted}"
        );
    }

    #[test]
    fn carrier_resolution_is_checked() {
        let (n, env_grid, _) = setup(8.0);
        let frame = CarrierFrame::new(n);
        let lx = env_grid.length() / frame.beta(); // wraps = 1
        let coarse = SpaceGrid::new(lx, 256).unwrap(); // way below 3N
        let env = envelope_from_fn(env_grid, |_| Complex64::new(0.0, 0.0));
        let err = WavePacket::new(env, n, coarse, WavePacketOptions::default()).unwrap_err();
        assert!(matches!(err, WavePacketError::CarrierUnresolved { .. }));
    }

    #[test]
    fn escaped_envelope_is_diagnosed() {
        let (n, env_grid, target) = setup(8.0);
        // envelope centered at the window edge: mass leaks into both margins
        let env = envelope_from_fn(env_grid, |y| {
            Complex64::new((-(y / 1.0).powi(2) / 2.0).exp(), 0.0)
        });
        let err = WavePacket::new(env, n, target, WavePacketOptions::default()).unwrap_err();
        assert!(matches!(err, WavePacketError::EnvelopeEscaped(_)));
    }

    #[test]
    fn sampler_matches_direct_evaluation_with_drift() {
        let (n, env_grid, target) = setup(8.0);
        let frame = CarrierFrame::new(n);
        // band-limited envelope with a few modes
        let env_fn = |y: f64| -> Complex64 {
            let k = std::f64::consts::TAU / env_grid.length();
            Complex64::new(
                (k * y).cos() + 0.3 * (2.0 * k * y).sin(),
                0.2 * (3.0 * k * y).cos(),
            )
        };
        let env = envelope_from_fn(env_grid, env_fn);
        let sampler = EnvelopeSampler::new(env_grid, target, n).unwrap();
        let coeffs = crate::fft::to_coeffs(&env.states[0]);
        let t = 0.37;
        let sampled = sampler.sample(&coeffs, t);
        for &i in &[0usize, 1000 % target.points(), target.points() / 3] {
            let y = frame.envelope_coordinate(t, target.x(i));
            let direct = env_fn(y.rem_euclid(env_grid.length()));
            assert!(
                (sampled[i] - direct).norm() < 1e-9,
                "i={i}: {} vs {}",
                sampled[i],
                direct
            );
        }
    }
}
