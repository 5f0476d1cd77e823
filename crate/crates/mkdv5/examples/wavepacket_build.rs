//! Building the approximate solution: the carrier/envelope change of
//! variables, the doubly-commensurate grid design, and the L² identity
//! ‖U_ap‖ = (2/√(3N³))·(10N³)^{1/4}·‖u‖/√2.
//!
//! ```bash
//! cargo run --release -p mkdv5 --example wavepacket_build
//! ```

use mkdv5::evolution::{evolve_cubic_nls, EvolveOptions, NlsSign, StorePolicy};
use mkdv5::spectral::{ComplexField, SpaceGrid};
use mkdv5::wavepacket::{change_of_variables, design_carrier_grid, CarrierFrame, WavePacket, WavePacketOptions};
use num_complex::Complex64;

fn main() {
    let n_request = 16.0;
    let l_env = 12.0;
    let (n, lx, k_index) = design_carrier_grid(n_request, l_env, 1);
    let frame = CarrierFrame::new(n);
    println!("carrier design for request N = {n_request}:");
    println!("  N       = {n:.9}   (grid mode {k_index})");
    println!("  L_x     = {lx:.6}");
    println!("  β       = {:.6e}   (envelope periods across the box: {:.9})", frame.beta(), frame.beta() * lx / l_env);
    println!("  γ       = {:.6}   (envelope drift rate)", frame.gamma());
    println!("  2/√(3N³) = {:.6e}", frame.amplitude());

    let (s, y) = change_of_variables(0.25, 100.0, n);
    println!("\nchange of variables at (t, x) = (0.25, 100): (s, y) = ({s}, {y:.6})");

    // envelope: Gaussian, solved under the cubic NLS
    let env_grid = SpaceGrid::new(l_env, 128).unwrap();
    let u0 = ComplexField::from_fn(env_grid, |yy| {
        Complex64::new(0.1 * (-((yy - 6.0) / 0.8).powi(2) / 2.0).exp(), 0.0)
    });
    let opts = EvolveOptions::new(0.25, 0.25 / 512.0)
        .with_store(StorePolicy::Times(vec![0.0, 0.125, 0.25]));
    let env = evolve_cubic_nls(&u0, NlsSign::PlusCubic, &opts).unwrap();

    let n_x = {
        let need = (lx * 3.3 * n / std::f64::consts::PI).ceil() as usize;
        need.next_power_of_two()
    };
    let target = SpaceGrid::new(lx, n_x).unwrap();
    let wp = WavePacket::new(env, n, target, WavePacketOptions::default()).unwrap();

    println!("\npacket on n_x = {n_x} points:");
    for t in [0.0, 0.125, 0.25] {
        let u = wp.build(t).unwrap();
        let envelope_norm = {
            let coeffs: Vec<Complex64> = wp.envelope.states[wp.envelope.nearest_index(t)].clone();
            ComplexField::new(env_grid, mkdv5::spectral::Side::Physical, coeffs).l2_norm()
        };
        let predicted =
            frame.amplitude() * (10.0 * n.powi(3)).powf(0.25) * envelope_norm / 2f64.sqrt();
        println!(
            "  t = {t:5.3}: ‖U_ap‖_L2 = {:.9e}  envelope transfer identity: {:.9e}  (rel dev {:.2e})",
            u.l2_norm(),
            predicted,
            (u.l2_norm() - predicted).abs() / predicted
        );
    }
}
