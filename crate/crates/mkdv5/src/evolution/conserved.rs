//! Conserved-quantity tracking along stored trajectories.

use super::trajectory::{ComplexTrajectory, RealTrajectory};

/// One measurement row: mass is ∫u²dx (real) or ∫|u|²dx (complex); the
/// energy proxy ∫(∂ₓu)²dx is a diagnostic only and is never asserted on.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ConservationRow {
    pub t: f64,
    pub mass: f64,
    pub energy_proxy: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ConservationTable {
    pub rows: Vec<ConservationRow>,
    /// max |mass(t) − mass(0)| / mass(0) over the trajectory.
    pub max_relative_mass_drift: f64,
}

fn finish(rows: Vec<ConservationRow>) -> ConservationTable {
    let mass0 = rows.first().map(|r| r.mass).unwrap_or(0.0);
    let drift = if mass0 > 0.0 {
        rows.iter()
            .map(|r| ((r.mass - mass0) / mass0).abs())
            .fold(0.0, f64::max)
    } else {
        rows.iter().map(|r| r.mass.abs()).fold(0.0, f64::max)
    };
    ConservationTable {
        rows,
        max_relative_mass_drift: drift,
    }
}

pub fn conserved_quantities(traj: &RealTrajectory) -> ConservationTable {
    let rows = (0..traj.len())
        .map(|i| {
            let f = traj.state_field(i);
            ConservationRow {
                t: traj.times[i],
                mass: f.l2_norm().powi(2),
                energy_proxy: f.to_complex().derivative(1).l2_norm().powi(2),
            }
        })
        .collect();
    finish(rows)
}

pub fn conserved_quantities_complex(traj: &ComplexTrajectory) -> ConservationTable {
    let rows = (0..traj.len())
        .map(|i| {
            let f = traj.state_field(i);
            ConservationRow {
                t: traj.times[i],
                mass: f.l2_norm().powi(2),
                energy_proxy: f.derivative(1).l2_norm().powi(2),
            }
        })
        .collect();
    finish(rows)
}
