//! Self-describing binary trajectory checkpoints.
//!
//! Layout (all integers little-endian u64, floats little-endian f64):
//!
//! ```text
//! bytes 0..8    magic "MKDV5TRJ"
//! u64           format version (1)
//! f64           grid length L
//! u64           grid points n
//! f64           solver dt
//! u64           solver steps
//! u64           dealias rule (0 = Pad2, 1 = Truncate)
//! f64           max imaginary residue
//! u64           record count m
//! m × record:   f64 time stamp, n × f64 samples
//! ```

use super::IoError;
use crate::evolution::{RealTrajectory, SolverMeta};
use crate::spectral::{DealiasRule, SpaceGrid};
use std::io::{Read, Write};
use std::path::Path;

const MAGIC: &[u8; 8] = b"MKDV5TRJ";
const VERSION: u64 = 1;

pub fn write_real_trajectory(traj: &RealTrajectory, path: &Path) -> Result<(), IoError> {
    let mut out = std::io::BufWriter::new(
        std::fs::File::create(path).map_err(IoError::file(path))?,
    );
    let io = IoError::file(path);
    (|| -> std::io::Result<()> {
        out.write_all(MAGIC)?;
        out.write_all(&VERSION.to_le_bytes())?;
        out.write_all(&traj.grid.length().to_le_bytes())?;
        out.write_all(&(traj.grid.points() as u64).to_le_bytes())?;
        out.write_all(&traj.meta.dt.to_le_bytes())?;
        out.write_all(&(traj.meta.steps as u64).to_le_bytes())?;
        let rule: u64 = match traj.meta.dealias {
            DealiasRule::Pad2 => 0,
            DealiasRule::Truncate => 1,
        };
        out.write_all(&rule.to_le_bytes())?;
        out.write_all(&traj.meta.max_imag_residue.to_le_bytes())?;
        out.write_all(&(traj.times.len() as u64).to_le_bytes())?;
        for (t, state) in traj.times.iter().zip(&traj.states) {
            out.write_all(&t.to_le_bytes())?;
            for v in state {
                out.write_all(&v.to_le_bytes())?;
            }
        }
        out.flush()
    })()
    .map_err(io)
}

pub fn read_real_trajectory(path: &Path) -> Result<RealTrajectory, IoError> {
    let mut file = std::io::BufReader::new(
        std::fs::File::open(path).map_err(IoError::file(path))?,
    );
    let bad = |reason: &str| IoError::BadTrajectory {
        path: path.display().to_string(),
        reason: reason.to_string(),
    };

    let mut magic = [0u8; 8];
    file.read_exact(&mut magic).map_err(IoError::file(path))?;
    if &magic != MAGIC {
        return Err(bad("magic mismatch"));
    }
    let mut u = || -> Result<u64, IoError> {
        let mut b = [0u8; 8];
        file.read_exact(&mut b).map_err(IoError::file(path))?;
        Ok(u64::from_le_bytes(b))
    };
    let version = u()?;
    if version != VERSION {
        return Err(bad("unsupported version"));
    }
    let length = f64::from_bits(u()?);
    let points = u()? as usize;
    let dt = f64::from_bits(u()?);
    let steps = u()? as usize;
    let rule = match u()? {
        0 => DealiasRule::Pad2,
        1 => DealiasRule::Truncate,
        _ => return Err(bad("unknown dealias rule")),
    };
    let max_imag = f64::from_bits(u()?);
    let count = u()? as usize;

    let grid = SpaceGrid::new(length, points).map_err(|e| IoError::BadTrajectory {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let mut times = Vec::with_capacity(count);
    let mut states = Vec::with_capacity(count);
    for _ in 0..count {
        times.push(f64::from_bits(u()?));
        let mut state = Vec::with_capacity(points);
        for _ in 0..points {
            state.push(f64::from_bits(u()?));
        }
        states.push(state);
    }
    Ok(RealTrajectory {
        grid,
        times,
        states,
        meta: SolverMeta {
            dt,
            steps,
            dealias: rule,
            max_imag_residue: max_imag,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{evolve_fifth_mkdv, EquationCoeffs, EvolveOptions, StorePolicy};
    use crate::spectral::RealField;
    use std::f64::consts::TAU;

    #[test]
    fn checkpoint_round_trip_is_bit_exact() {
        let grid = SpaceGrid::new(16.0, 64).unwrap();
        let u0 = RealField::from_fn(grid, |x| 0.1 * (TAU * x / 16.0).sin());
        let opts = EvolveOptions::new(0.01, 1e-3).with_store(StorePolicy::EveryStep);
        let traj = evolve_fifth_mkdv(&u0, EquationCoeffs::integrable(), &opts).unwrap();

        let path = std::env::temp_dir().join(format!("mkdv5_traj_{}.bin", std::process::id()));
        write_real_trajectory(&traj, &path).unwrap();
        let back = read_real_trajectory(&path).unwrap();
        std::fs::remove_file(&path).ok();

        assert_eq!(traj.times, back.times);
        assert_eq!(traj.states, back.states);
        assert_eq!(traj.grid, back.grid);
        assert_eq!(traj.meta.dt, back.meta.dt);
        assert_eq!(traj.meta.dealias, back.meta.dealias);
    }

    #[test]
    fn garbage_file_is_rejected() {
        let path = std::env::temp_dir().join(format!("mkdv5_garbage_{}.bin", std::process::id()));
        std::fs::write(&path, b"not a trajectory").unwrap();
        assert!(read_real_trajectory(&path).is_err());
        std::fs::remove_file(&path).ok();
    }
}
