//! Integrating-factor RK4 solver for the fifth-order mKdV family.

use super::trajectory::{RealTrajectory, SolverMeta};
use super::{EquationCoeffs, EvolveOptions, SolverError};
use crate::fft;
use crate::spectral::{
    cube_dealiased, padded_quartic_derivative, padded_triple, ComplexField, DealiasRule, RealField,
    Side, SpaceGrid,
};
use num_complex::Complex64;

/// Exact linear flow `e^{t∂ₓ⁵}`: each mode multiplied by `e^{itξ⁵}`
/// (the symbol of ∂ₓ⁵ is (iξ)⁵ = iξ⁵). Unitary on L².
pub fn linear_fifth_propagator(u0: &RealField, t: f64) -> RealField {
    linear_fifth_propagator_complex(&u0.to_complex(), t).re()
}

/// Complex-field version of [`linear_fifth_propagator`].
pub fn linear_fifth_propagator_complex(u0: &ComplexField, t: f64) -> ComplexField {
    let side = u0.side();
    let mut spec = u0.spectral();
    let grid = u0.grid();
    apply_fifth_phase(spec.samples_mut(), &grid, t);
    match side {
        Side::Spectral => spec,
        Side::Physical => spec.to_physical().expect("spectral side"),
    }
}

fn apply_fifth_phase(coeffs: &mut [Complex64], grid: &SpaceGrid, t: f64) {
    for (idx, c) in coeffs.iter_mut().enumerate() {
        let xi = grid.wavenumber(idx);
        *c *= Complex64::from_polar(1.0, t * xi.powi(5));
    }
}

/// Conservative step-size heuristic for the mKdV family: the third-derivative
/// nonlinear terms act like `|u|² ξ³` and the quintic like `|u|⁴ ξ`, so
///
/// `dt ≤ 0.5 / (C₃ max|u|² k_max³ + C₁ max|u|⁴ k_max)`
///
/// with the coefficient magnitudes folded in. The linear part is exact and
/// imposes no constraint.
pub fn suggested_dt(u0: &RealField, coeffs: &EquationCoeffs, rule: DealiasRule) -> f64 {
    let grid = u0.grid();
    let k_max = rule.retained_modes(grid.points()) as f64 * grid.fundamental_wavenumber();
    let amp = u0.max_abs().max(1e-300);
    let c3_scale = coeffs.c1.abs().max(coeffs.c2.abs()).max(coeffs.c3.abs()).max(1e-300);
    let rate = 3.0 * c3_scale * amp * amp * k_max.powi(3) + coeffs.c0.abs() * amp.powi(4) * k_max;
    0.5 / rate.max(1e-300)
}

/// Evolve `∂ₜu = ∂ₓ⁵u − c₁∂ₓ³(u³) − c₂ u∂ₓu∂ₓ²u − c₃ u²∂ₓ³u − c₀ u⁴∂ₓu`.
///
/// Fourth-order accurate in dt; the linear flow is applied exactly per mode.
pub fn evolve_fifth_mkdv(
    u0: &RealField,
    coeffs: EquationCoeffs,
    opts: &EvolveOptions,
) -> Result<RealTrajectory, SolverError> {
    let (steps, dt) = opts.validate()?;
    let grid = u0.grid();
    let store_at = opts.store.indices(steps, dt);

    let mut state = fft::to_coeffs(
        &u0.samples()
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect::<Vec<_>>(),
    );
    crate::spectral::dealias(
        &ComplexField::new(grid, Side::Spectral, state.clone()),
        opts.dealias,
    )
    .samples()
    .clone_into(&mut state);

    let mut ws = MkdvWorkspace::new(grid, coeffs, opts.dealias, dt);
    let l2_initial = l2_of_coeffs(&state, &grid).max(1e-300);

    let mut times = Vec::with_capacity(store_at.len());
    let mut states = Vec::with_capacity(store_at.len());
    let mut store_iter = store_at.iter().peekable();
    let mut max_imag: f64 = 0.0;

    if store_iter.peek() == Some(&&0) {
        store_iter.next();
        times.push(0.0);
        states.push(to_real_samples(&state, &mut max_imag));
    }

    for step in 0..steps {
        ws.rk4_step(&mut state);
        let t = (step + 1) as f64 * dt;

        let l2 = l2_of_coeffs(&state, &grid);
        if !l2.is_finite() || l2 > opts.blowup_factor * l2_initial {
            return Err(SolverError::BlowUp {
                t,
                factor: l2 / l2_initial,
                limit: opts.blowup_factor,
            });
        }
        if store_iter.peek() == Some(&&(step + 1)) {
            store_iter.next();
            times.push(t);
            states.push(to_real_samples(&state, &mut max_imag));
        }
    }
    max_imag = max_imag.max(ws.max_imag);

    Ok(RealTrajectory {
        grid,
        times,
        states,
        meta: SolverMeta {
            dt,
            steps,
            dealias: opts.dealias,
            max_imag_residue: max_imag,
        },
    })
}

fn l2_of_coeffs(coeffs: &[Complex64], grid: &SpaceGrid) -> f64 {
    let sum: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    (grid.length() * sum).sqrt()
}

fn to_real_samples(coeffs: &[Complex64], max_imag: &mut f64) -> Vec<f64> {
    let phys = fft::to_samples(coeffs);
    for z in &phys {
        *max_imag = max_imag.max(z.im.abs());
    }
    phys.iter().map(|z| z.re).collect()
}

struct MkdvWorkspace {
    grid: SpaceGrid,
    coeffs: EquationCoeffs,
    rule: DealiasRule,
    dt: f64,
    phase_half: Vec<Complex64>,
    phase_full: Vec<Complex64>,
    max_imag: f64,
}

impl MkdvWorkspace {
    fn new(grid: SpaceGrid, coeffs: EquationCoeffs, rule: DealiasRule, dt: f64) -> Self {
        let phase = |t: f64| -> Vec<Complex64> {
            (0..grid.points())
                .map(|idx| Complex64::from_polar(1.0, t * grid.wavenumber(idx).powi(5)))
                .collect()
        };
        MkdvWorkspace {
            grid,
            coeffs,
            rule,
            dt,
            phase_half: phase(dt / 2.0),
            phase_full: phase(dt),
            max_imag: 0.0,
        }
    }

    /// Nonlinear right-hand side in spectral coefficients:
    /// `N̂(u) = −c₁ (iξ)³ (u³)^ − c₂ (u ∂ₓu ∂ₓ²u)^ − c₃ (u² ∂ₓ³u)^ − c₀ (u⁴∂ₓu)^`.
    fn nonlinear(&mut self, u_hat: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.points();
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        let c = self.coeffs;
        if c.is_zero() {
            return rhs;
        }
        // all products are evaluated through real physical samples so that
        // conjugate symmetry is restored at every stage
        let u_field = self.real_projected(u_hat);
        if c.c1 != 0.0 {
            let cube = cube_dealiased(&u_field, self.rule);
            let d3 = cube.derivative(3);
            for (r, v) in rhs.iter_mut().zip(d3.samples()) {
                *r -= c.c1 * v;
            }
        }
        if c.c2 != 0.0 || c.c3 != 0.0 {
            let du = self.real_projected_derived(u_hat, 1);
            let d2u = self.real_projected_derived(u_hat, 2);
            let d3u = self.real_projected_derived(u_hat, 3);
            if c.c2 != 0.0 {
                let p = padded_triple(&u_field.spectral(), &du, &d2u, self.rule);
                for (r, v) in rhs.iter_mut().zip(p.samples()) {
                    *r -= c.c2 * v;
                }
            }
            if c.c3 != 0.0 {
                let p = padded_triple(&u_field.spectral(), &u_field.spectral(), &d3u, self.rule);
                for (r, v) in rhs.iter_mut().zip(p.samples()) {
                    *r -= c.c3 * v;
                }
            }
        }
        if c.c0 != 0.0 {
            let du = self.real_projected_derived(u_hat, 1);
            let p = padded_quartic_derivative(&u_field.spectral(), &du, self.rule);
            for (r, v) in rhs.iter_mut().zip(p.samples()) {
                *r -= c.c0 * v;
            }
        }
        rhs
    }

    /// Physical samples of û with the imaginary residue projected out,
    /// returned as a spectral ComplexField of the projected real field.
    fn real_projected(&mut self, u_hat: &[Complex64]) -> ComplexField {
        let phys = fft::to_samples(u_hat);
        for z in &phys {
            self.max_imag = self.max_imag.max(z.im.abs());
        }
        let re: Vec<Complex64> = phys.iter().map(|z| Complex64::new(z.re, 0.0)).collect();
        ComplexField::new(self.grid, Side::Spectral, fft::to_coeffs(&re))
    }

    fn real_projected_derived(&mut self, u_hat: &[Complex64], order: u32) -> ComplexField {
        let d = ComplexField::new(self.grid, Side::Spectral, u_hat.to_vec()).derivative(order);
        self.real_projected(d.samples())
    }

    /// One integrating-factor RK4 step on the spectral state.
    fn rk4_step(&mut self, u_hat: &mut Vec<Complex64>) {
        let dt = self.dt;
        let n = u_hat.len();
        // v(τ) = e^{-iξ⁵τ} û(t+τ); stages of v' = e^{-iξ⁵τ} N̂(e^{iξ⁵τ} v)
        let a = self.nonlinear(u_hat);

        let mut stage = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            stage[i] = (u_hat[i] + 0.5 * dt * a[i]) * self.phase_half[i];
        }
        let b_raw = self.nonlinear(&stage);
        let b: Vec<Complex64> = (0..n).map(|i| b_raw[i] * self.phase_half[i].conj()).collect();

        for i in 0..n {
            stage[i] = (u_hat[i] + 0.5 * dt * b[i]) * self.phase_half[i];
        }
        let c_raw = self.nonlinear(&stage);
        let c: Vec<Complex64> = (0..n).map(|i| c_raw[i] * self.phase_half[i].conj()).collect();

        for i in 0..n {
            stage[i] = (u_hat[i] + dt * c[i]) * self.phase_full[i];
        }
        let d_raw = self.nonlinear(&stage);

        for i in 0..n {
            let incr = dt / 6.0
                * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d_raw[i] * self.phase_full[i].conj());
            u_hat[i] = (u_hat[i] + incr) * self.phase_full[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::StorePolicy;
    use std::f64::consts::TAU;

    fn grid() -> SpaceGrid {
        SpaceGrid::new(16.0, 128).unwrap()
    }

    #[test]
    fn propagator_at_zero_time_is_identity() {
        let g = grid();
        let u = RealField::from_fn(g, |x| (TAU * x / g.length()).sin());
        let v = linear_fifth_propagator(&u, 0.0);
        for (a, b) in u.samples().iter().zip(v.samples()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn propagator_phases_single_mode() {
        let g = grid();
        let k = 3i64;
        let xi = TAU * k as f64 / g.length();
        let u = ComplexField::single_mode(g, k, Complex64::new(1.0, 0.0));
        let t = 0.37;
        let v = linear_fifth_propagator_complex(&u, t);
        let idx = g.index_of_mode(k).unwrap();
        let expected = Complex64::from_polar(1.0, t * xi.powi(5));
        assert!((v.samples()[idx] - expected).norm() < 1e-13);
    }

    #[test]
    fn propagator_preserves_l2() {
        let g = grid();
        let u = RealField::from_fn(g, |x| {
            (TAU * x / g.length()).sin() + 0.4 * (3.0 * TAU * x / g.length()).cos()
        });
        for t in [0.1, 1.0, 12.5] {
            let v = linear_fifth_propagator(&u, t);
            assert!((u.l2_norm() - v.l2_norm()).abs() < 1e-12 * u.l2_norm());
        }
    }

    #[test]
    fn zero_coefficients_reduce_to_linear_flow() {
        let g = grid();
        let u0 = RealField::from_fn(g, |x| {
            0.5 * (TAU * x / g.length()).sin() + 0.2 * (2.0 * TAU * x / g.length()).cos()
        });
        let opts = EvolveOptions::new(0.5, 1e-3);
        let traj = evolve_fifth_mkdv(&u0, EquationCoeffs::new(0.0, 0.0, 0.0), &opts).unwrap();
        let exact = linear_fifth_propagator(&u0, 0.5);
        let last = traj.state_field(traj.len() - 1);
        let diff: f64 = last
            .samples()
            .iter()
            .zip(exact.samples())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-10, "deviation from exact linear flow: {diff}");
    }

    #[test]
    fn reality_is_preserved() {
        let g = grid();
        let u0 = RealField::from_fn(g, |x| 0.1 * (TAU * x / g.length()).sin());
        let opts = EvolveOptions::new(0.05, 5e-4).with_store(StorePolicy::EveryStep);
        let traj = evolve_fifth_mkdv(&u0, EquationCoeffs::integrable(), &opts).unwrap();
        assert!(traj.meta.max_imag_residue < 1e-12);
        assert!(traj.times_strictly_increasing());
    }

    #[test]
    fn suggested_dt_is_stable_for_modest_data() {
        let g = grid();
        let u0 = RealField::from_fn(g, |x| 0.2 * (TAU * x / g.length()).sin());
        let coeffs = EquationCoeffs::integrable();
        let dt = suggested_dt(&u0, &coeffs, DealiasRule::Pad2);
        assert!(dt.is_finite() && dt > 0.0);
        // evolving at the suggested step must not trip the blow-up guard
        let opts = EvolveOptions::new((20.0 * dt).min(0.05), dt);
        let traj = evolve_fifth_mkdv(&u0, coeffs, &opts).unwrap();
        let end = traj.state_field(traj.len() - 1);
        assert!((end.l2_norm() - u0.l2_norm()).abs() < 0.01 * u0.l2_norm());
    }

    #[test]
    fn blow_up_guard_triggers() {
        let g = grid();
        // violently unstable configuration: huge amplitude, huge dt
        let u0 = RealField::from_fn(g, |x| 40.0 * (TAU * x / g.length()).sin());
        let opts = EvolveOptions::new(1.0, 0.05);
        let err = evolve_fifth_mkdv(&u0, EquationCoeffs::integrable(), &opts).unwrap_err();
        assert!(matches!(err, SolverError::BlowUp { .. }));
    }
}
