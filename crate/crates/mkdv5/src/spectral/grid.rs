//! Uniform periodic spatial grid and its discrete wavenumbers.

use super::SpectralError;
use std::f64::consts::TAU;

/// Periodic discretization of `[0, L)` with `n` uniformly spaced points.
///
/// Wavenumbers are `ξ_k = 2πk/L` for signed mode numbers `k ∈ [−n/2, n/2)`,
/// stored in FFT order (`0, 1, …, n/2−1, −n/2, …, −1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceGrid {
    length: f64,
    points: usize,
}

impl SpaceGrid {
    pub fn new(length: f64, points: usize) -> Result<Self, SpectralError> {
        if !(length.is_finite() && length > 0.0) {
            return Err(SpectralError::BadLength(length));
        }
        if points < 8 || points % 2 != 0 {
            return Err(SpectralError::BadPointCount(points));
        }
        Ok(SpaceGrid { length, points })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Grid spacing L/n (derived, so spacing × n = length by construction).
    pub fn spacing(&self) -> f64 {
        self.length / self.points as f64
    }

    /// Physical coordinate of sample `i`.
    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.x(i))
    }

    /// Signed mode number of FFT-ordered index: 0,1,…,n/2−1,−n/2,…,−1.
    pub fn mode_number(&self, idx: usize) -> i64 {
        let n = self.points as i64;
        let i = idx as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Wavenumber ξ_k = 2πk/L of FFT-ordered index.
    pub fn wavenumber(&self, idx: usize) -> f64 {
        TAU * self.mode_number(idx) as f64 / self.length
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.wavenumber(i)).collect()
    }

    /// FFT-ordered index of signed mode `k`, if it fits on this grid.
    pub fn index_of_mode(&self, k: i64) -> Option<usize> {
        let n = self.points as i64;
        if k >= -n / 2 && k < n / 2 {
            Some(k.rem_euclid(n) as usize)
        } else {
            None
        }
    }

    /// Spacing of the wavenumber ladder, 2π/L.
    pub fn fundamental_wavenumber(&self) -> f64 {
        TAU / self.length
    }

    /// Magnitude of the largest (Nyquist) wavenumber, πn/L.
    pub fn nyquist_wavenumber(&self) -> f64 {
        TAU * (self.points as f64 / 2.0) / self.length
    }

    /// Nearest grid-commensurate wavenumber to `target`, i.e. the closest
    /// integer multiple of 2π/L. Carriers must be commensurate so that
    /// `e^{iNx}` is exactly periodic on the grid.
    pub fn commensurate_wavenumber(&self, target: f64) -> f64 {
        let k = (target / self.fundamental_wavenumber()).round();
        k * self.fundamental_wavenumber()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(SpaceGrid::new(0.0, 16).is_err());
        assert!(SpaceGrid::new(-1.0, 16).is_err());
        assert!(SpaceGrid::new(1.0, 6).is_err());
        assert!(SpaceGrid::new(1.0, 15).is_err());
    }

    #[test]
    fn spacing_times_points_is_length() {
        // binary-exact length so the identity holds exactly in f64
        let g = SpaceGrid::new(8.0, 16).unwrap();
        assert_eq!(g.spacing() * g.points() as f64, g.length());
    }

    #[test]
    fn wavenumbers_antisymmetric_except_nyquist() {
        let g = SpaceGrid::new(10.0, 32).unwrap();
        let n = g.points();
        for idx in 1..n {
            if idx == n / 2 {
                continue; // Nyquist has no positive partner
            }
            let partner = n - idx;
            assert_eq!(g.wavenumber(idx), -g.wavenumber(partner));
        }
        assert!(g.wavenumber(n / 2) < 0.0);
        assert_eq!(g.mode_number(n / 2), -(n as i64) / 2);
    }

    #[test]
    fn mode_index_round_trip() {
        let g = SpaceGrid::new(4.0, 16).unwrap();
        for idx in 0..g.points() {
            let k = g.mode_number(idx);
            assert_eq!(g.index_of_mode(k), Some(idx));
        }
        assert_eq!(g.index_of_mode(8), None);
        assert_eq!(g.index_of_mode(-9), None);
    }

    #[test]
    fn commensurate_carrier_is_integer_mode() {
        let g = SpaceGrid::new(7.3, 64).unwrap();
        let n = g.commensurate_wavenumber(8.0);
        let ratio = n / g.fundamental_wavenumber();
        assert!((ratio - ratio.round()).abs() < 1e-12);
        assert!((n - 8.0).abs() <= g.fundamental_wavenumber() / 2.0);
    }
}
