//! Trajectory persistence: evolve, checkpoint to the self-describing binary
//! container, read back bit-exactly, and resume.
//!
//! ```bash
//! cargo run --release -p mkdv5 --example trajectory_checkpoint
//! ```

use mkdv5::evolution::{evolve_fifth_mkdv, EquationCoeffs, EvolveOptions, StorePolicy};
use mkdv5::io::{read_real_trajectory, write_real_trajectory};
use mkdv5::spectral::{RealField, SpaceGrid};
use std::f64::consts::TAU;

fn main() {
    let grid = SpaceGrid::new(16.0, 128).unwrap();
    let u0 = RealField::from_fn(grid, |x| 0.1 * (TAU * x / 16.0).sin());
    let opts = EvolveOptions::new(0.05, 5e-4).with_store(StorePolicy::Stride(20));
    let traj = evolve_fifth_mkdv(&u0, EquationCoeffs::integrable(), &opts).unwrap();

    let path = std::env::temp_dir().join("mkdv5_demo_trajectory.bin");
    write_real_trajectory(&traj, &path).unwrap();
    let size = std::fs::metadata(&path).unwrap().len();
    println!("wrote {} snapshots ({} bytes) to {}", traj.len(), size, path.display());

    let back = read_real_trajectory(&path).unwrap();
    let identical = back.times == traj.times && back.states == traj.states;
    println!("read back bit-identical: {identical}");

    // resume from the checkpointed final state
    let last = back.state_field(back.len() - 1);
    let resumed = evolve_fifth_mkdv(&last, EquationCoeffs::integrable(), &opts).unwrap();
    println!(
        "resumed to t = {:.3}: ‖u‖_L2 = {:.12} (initial {:.12})",
        back.times.last().unwrap() + resumed.times.last().unwrap(),
        resumed.state_field(resumed.len() - 1).l2_norm(),
        u0.l2_norm()
    );
    std::fs::remove_file(&path).ok();
}
