//! Stored solver output: time stamps plus field snapshots.

use crate::spectral::{ComplexField, DealiasRule, RealField, Side, SpaceGrid};
use num_complex::Complex64;

/// Which time levels a solver keeps.
#[derive(Debug, Clone, PartialEq)]
pub enum StorePolicy {
    FirstAndLast,
    EveryStep,
    /// Every k-th step (first and last always included).
    Stride(usize),
    /// Specific times; each is rounded to the nearest step.
    Times(Vec<f64>),
}

impl StorePolicy {
    /// Step indices to store for a run of `steps` steps of size `dt`.
    pub(crate) fn indices(&self, steps: usize, dt: f64) -> Vec<usize> {
        let mut idx: Vec<usize> = match self {
            StorePolicy::FirstAndLast => vec![0, steps],
            StorePolicy::EveryStep => (0..=steps).collect(),
            StorePolicy::Stride(k) => {
                let k = (*k).max(1);
                let mut v: Vec<usize> = (0..=steps).step_by(k).collect();
                if *v.last().unwrap() != steps {
                    v.push(steps);
                }
                if v[0] != 0 {
                    v.insert(0, 0);
                }
                v
            }
            StorePolicy::Times(ts) => {
                let mut v: Vec<usize> = ts
                    .iter()
                    .map(|t| (t / dt).round().clamp(0.0, steps as f64) as usize)
                    .collect();
                v.push(0);
                v.push(steps);
                v
            }
        };
        idx.sort_unstable();
        idx.dedup();
        idx
    }
}

/// Solver bookkeeping stored with a trajectory.
#[derive(Debug, Clone)]
pub struct SolverMeta {
    pub dt: f64,
    pub steps: usize,
    pub dealias: DealiasRule,
    /// Largest |Im| seen when projecting to physical space (real solver only).
    pub max_imag_residue: f64,
}

/// Trajectory of a real-valued solution (fifth-order mKdV family).
#[derive(Debug, Clone)]
pub struct RealTrajectory {
    pub grid: SpaceGrid,
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub meta: SolverMeta,
}

impl RealTrajectory {
    pub fn state_field(&self, i: usize) -> RealField {
        RealField::new(self.grid, self.states[i].clone())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Index of the stored time nearest to t.
    pub fn nearest_index(&self, t: f64) -> usize {
        let mut best = 0;
        let mut dist = f64::INFINITY;
        for (i, &ti) in self.times.iter().enumerate() {
            let d = (ti - t).abs();
            if d < dist {
                dist = d;
                best = i;
            }
        }
        best
    }

    pub fn times_strictly_increasing(&self) -> bool {
        self.times.windows(2).all(|w| w[1] > w[0])
    }
}

/// Trajectory of a complex-valued solution (cubic NLS).
#[derive(Debug, Clone)]
pub struct ComplexTrajectory {
    pub grid: SpaceGrid,
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex64>>,
    pub meta: SolverMeta,
}

impl ComplexTrajectory {
    pub fn state_field(&self, i: usize) -> ComplexField {
        ComplexField::new(self.grid, Side::Physical, self.states[i].clone())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn nearest_index(&self, t: f64) -> usize {
        let mut best = 0;
        let mut dist = f64::INFINITY;
        for (i, &ti) in self.times.iter().enumerate() {
            let d = (ti - t).abs();
            if d < dist {
                dist = d;
                best = i;
            }
        }
        best
    }

    pub fn times_strictly_increasing(&self) -> bool {
        self.times.windows(2).all(|w| w[1] > w[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stride_policy_includes_endpoints() {
        let idx = StorePolicy::Stride(7).indices(20, 0.1);
        assert_eq!(idx.first(), Some(&0));
        assert_eq!(idx.last(), Some(&20));
        assert!(idx.contains(&7) && idx.contains(&14));
    }

    #[test]
    fn times_policy_rounds_to_steps() {
        let idx = StorePolicy::Times(vec![0.33, 0.96]).indices(10, 0.1);
        assert_eq!(idx, vec![0, 3, 10]);
    }
}
