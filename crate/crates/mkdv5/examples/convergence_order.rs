//! Self-convergence of the integrating-factor RK4 steppers: halving dt cuts
//! the error by ≈ 2⁴ for both equations.
//!
//! ```bash
//! cargo run --release -p mkdv5 --example convergence_order
//! ```

use mkdv5::evolution::{
    evolve_cubic_nls, evolve_fifth_mkdv, EquationCoeffs, EvolveOptions, NlsSign,
};
use mkdv5::spectral::{ComplexField, RealField, SpaceGrid};
use num_complex::Complex64;
use std::f64::consts::TAU;

fn main() {
    let grid = SpaceGrid::new(TAU, 64).unwrap();

    println!("fifth-order mKdV (integrable preset), T = 0.02:");
    let u0 = RealField::from_fn(grid, |x| {
        0.1 * (x.sin() + 0.6 * (2.0 * x).cos() + 0.3 * (3.0 * x).sin())
    });
    let solve = |dt: f64| -> RealField {
        let traj =
            evolve_fifth_mkdv(&u0, EquationCoeffs::integrable(), &EvolveOptions::new(0.02, dt))
                .unwrap();
        traj.state_field(traj.len() - 1)
    };
    let reference = solve(1e-4 / 8.0);
    let err = |f: &RealField| -> f64 {
        RealField::new(
            grid,
            f.samples()
                .iter()
                .zip(reference.samples())
                .map(|(a, b)| a - b)
                .collect(),
        )
        .l2_norm()
    };
    let mut prev: Option<f64> = None;
    for k in 0..4 {
        let dt = 1e-4 / 2f64.powi(k);
        let e = err(&solve(dt));
        match prev {
            Some(p) => println!(
                "  dt = {dt:.2e}: error {e:.3e}  ratio {:5.2}  order {:4.2}",
                p / e,
                (p / e).log2()
            ),
            None => println!("  dt = {dt:.2e}: error {e:.3e}"),
        }
        prev = Some(e);
    }

    println!("\ncubic NLS, T = 0.1:");
    let v0 = ComplexField::from_fn(grid, |x| Complex64::new(0.8 * x.sin(), 0.3 * (2.0 * x).cos()));
    let solve_nls = |dt: f64| -> ComplexField {
        let traj = evolve_cubic_nls(&v0, NlsSign::PlusCubic, &EvolveOptions::new(0.1, dt)).unwrap();
        traj.state_field(traj.len() - 1)
    };
    let reference = solve_nls(2e-3 / 8.0);
    let err_nls = |f: &ComplexField| -> f64 {
        let diff: Vec<Complex64> = f
            .samples()
            .iter()
            .zip(reference.samples())
            .map(|(a, b)| a - b)
            .collect();
        ComplexField::new(grid, mkdv5::spectral::Side::Physical, diff).l2_norm()
    };
    let mut prev: Option<f64> = None;
    for k in 0..4 {
        let dt = 2e-3 / 2f64.powi(k);
        let e = err_nls(&solve_nls(dt));
        match prev {
            Some(p) => println!(
                "  dt = {dt:.2e}: error {e:.3e}  ratio {:5.2}  order {:4.2}",
                p / e,
                (p / e).log2()
            ),
            None => println!("  dt = {dt:.2e}: error {e:.3e}"),
        }
        prev = Some(e);
    }
}
