//! Smooth compactly supported time cutoff η(t).

use super::SpectralError;

/// Smoothness of the cutoff ramps.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Smoothness {
    /// C^∞ ramp built from `exp(-1/t)` transition functions.
    Infinite,
    /// Polynomial ramp with `k` continuous derivatives at the junctions.
    Order(u32),
}

/// Cutoff equal to 1 on a plateau, 0 outside a support interval, with smooth
/// monotone ramps in between. Values are always in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeCutoff {
    plateau: (f64, f64),
    support: (f64, f64),
    smoothness: Smoothness,
}

impl TimeCutoff {
    pub fn new(
        plateau: (f64, f64),
        support: (f64, f64),
        smoothness: Smoothness,
    ) -> Result<Self, SpectralError> {
        let ok = support.0 < plateau.0 && plateau.0 <= plateau.1 && plateau.1 < support.1;
        if !ok {
            return Err(SpectralError::BadCutoff { plateau, support });
        }
        Ok(TimeCutoff {
            plateau,
            support,
            smoothness,
        })
    }

    /// The default cutoff: 1 on [0, 1], supported in [-1, 2], C^∞ ramps.
    pub fn standard() -> Self {
        TimeCutoff::new((0.0, 1.0), (-1.0, 2.0), Smoothness::Infinite).expect("valid intervals")
    }

    pub fn plateau(&self) -> (f64, f64) {
        self.plateau
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= self.support.0 || t >= self.support.1 {
            return 0.0;
        }
        if t >= self.plateau.0 && t <= self.plateau.1 {
            return 1.0;
        }
        if t < self.plateau.0 {
            let theta = (t - self.support.0) / (self.plateau.0 - self.support.0);
            self.ramp(theta)
        } else {
            let theta = (self.support.1 - t) / (self.support.1 - self.plateau.1);
            self.ramp(theta)
        }
    }

    /// Monotone ramp from 0 at θ=0 to 1 at θ=1, built as f(θ)/(f(θ)+f(1−θ)).
    fn ramp(&self, theta: f64) -> f64 {
        let f = match self.smoothness {
            Smoothness::Infinite => bump_half(theta),
            Smoothness::Order(k) => poly_half(theta, k),
        };
        let g = match self.smoothness {
            Smoothness::Infinite => bump_half(1.0 - theta),
            Smoothness::Order(k) => poly_half(1.0 - theta, k),
        };
        f / (f + g)
    }
}

fn bump_half(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// θ^{k+1}: vanishes to order k+1, so the rational ramp is C^k at both ends.
fn poly_half(t: f64, k: u32) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        t.powi(k as i32 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_cutoff_plateau_and_support_are_exact() {
        let eta = TimeCutoff::standard();
        assert_eq!(eta.eval(0.0), 1.0);
        assert_eq!(eta.eval(0.5), 1.0);
        assert_eq!(eta.eval(1.0), 1.0);
        assert_eq!(eta.eval(-1.0), 0.0);
        assert_eq!(eta.eval(2.0), 0.0);
        assert_eq!(eta.eval(-3.0), 0.0);
    }

    #[test]
    fn values_stay_in_unit_interval_and_ramps_are_monotone() {
        for sm in [Smoothness::Infinite, Smoothness::Order(8)] {
            let eta = TimeCutoff::new((0.0, 1.0), (-1.0, 2.0), sm).unwrap();
            let mut prev = 0.0;
            for i in 0..=200 {
                let t = -1.0 + 1.0 * i as f64 / 200.0; // rising ramp
                let v = eta.eval(t);
                assert!((0.0..=1.0).contains(&v));
                assert!(v >= prev - 1e-12);
                prev = v;
            }
        }
    }

    #[test]
    fn bad_intervals_rejected() {
        assert!(TimeCutoff::new((0.0, 1.0), (0.0, 2.0), Smoothness::Infinite).is_err());
        assert!(TimeCutoff::new((0.0, 1.0), (-1.0, 1.0), Smoothness::Infinite).is_err());
    }
}
