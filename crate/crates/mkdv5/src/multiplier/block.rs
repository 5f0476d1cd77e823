//! Dyadic frequency/modulation blocks and their closed-form norm bounds.

use super::MultiplierError;
use serde::{Deserialize, Serialize};

/// How far two dyadic magnitudes may differ and still count as comparable.
pub const COMPARABLE_FACTOR: f64 = 4.0;
/// Tolerance factor for the resonance relation H ~ N_max⁴ N_min.
pub const RESONANCE_FACTOR: f64 = 16.0;

fn comparable(a: f64, b: f64) -> bool {
    a <= COMPARABLE_FACTOR * b && b <= COMPARABLE_FACTOR * a
}

fn is_dyadic(x: f64) -> bool {
    x > 0.0 && x.is_finite() && x.log2().fract().abs() < 1e-12
}

/// One dyadic block: frequency magnitudes |ξⱼ| ~ Nⱼ, modulations |λⱼ| ~ Lⱼ
/// (λⱼ = τⱼ − ξⱼ⁵), and resonance magnitude |h(ξ)| ~ H, all on the
/// hyperplanes Σξⱼ = 0, Στⱼ = 0. Indices pair the Lⱼ with the Nⱼ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DyadicBlockSpec {
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
    pub h: f64,
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
}

impl DyadicBlockSpec {
    pub fn new(
        n: [f64; 3],
        h: f64,
        l: [f64; 3],
    ) -> Result<Self, MultiplierError> {
        for &v in n.iter().chain(l.iter()).chain(std::iter::once(&h)) {
            if !is_dyadic(v) {
                return Err(MultiplierError::NotDyadic(v));
            }
        }
        for &lv in &l {
            if lv < 1.0 {
                return Err(MultiplierError::ModulationTooSmall(lv));
            }
        }
        Ok(DyadicBlockSpec {
            n1: n[0],
            n2: n[1],
            n3: n[2],
            h,
            l1: l[0],
            l2: l[1],
            l3: l[2],
        })
    }

    pub fn ns(&self) -> [f64; 3] {
        [self.n1, self.n2, self.n3]
    }

    pub fn ls(&self) -> [f64; 3] {
        [self.l1, self.l2, self.l3]
    }

    fn sorted(v: [f64; 3]) -> (f64, f64, f64) {
        let mut s = v;
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        (s[0], s[1], s[2])
    }

    pub fn n_min(&self) -> f64 {
        Self::sorted(self.ns()).0
    }

    pub fn n_med(&self) -> f64 {
        Self::sorted(self.ns()).1
    }

    pub fn n_max(&self) -> f64 {
        Self::sorted(self.ns()).2
    }

    pub fn l_min(&self) -> f64 {
        Self::sorted(self.ls()).0
    }

    pub fn l_med(&self) -> f64 {
        Self::sorted(self.ls()).1
    }

    pub fn l_max(&self) -> f64 {
        Self::sorted(self.ls()).2
    }

    /// Admissibility per the block-vanishing and resonance relations:
    ///   (i)   N_med ~ N_max (factor 4),
    ///   (ii)  L_max ~ max(H, L_med) (factor 4),
    ///   (iii) if N_max ~ N_med ≳ 1 then H ~ N_max⁴ N_min (factor 16).
    pub fn admissibility(&self) -> Result<(), MultiplierError> {
        if !comparable(self.n_med(), self.n_max()) {
            return Err(MultiplierError::Inadmissible {
                relation: "N_med ~ N_max".into(),
                details: format!("N_med = {}, N_max = {}", self.n_med(), self.n_max()),
            });
        }
        let rhs = self.h.max(self.l_med());
        if !comparable(self.l_max(), rhs) {
            return Err(MultiplierError::Inadmissible {
                relation: "L_max ~ max(H, L_med)".into(),
                details: format!("L_max = {}, max(H, L_med) = {}", self.l_max(), rhs),
            });
        }
        if self.n_max() >= 1.0 {
            let resonant = self.n_max().powi(4) * self.n_min();
            let ok = self.h <= RESONANCE_FACTOR * resonant && resonant <= RESONANCE_FACTOR * self.h;
            if !ok {
                return Err(MultiplierError::Inadmissible {
                    relation: "H ~ N_max^4 N_min".into(),
                    details: format!("H = {}, N_max^4 N_min = {}", self.h, resonant),
                });
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility().is_ok()
    }
}

/// Which coherence case of the dyadic block estimate fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockCase {
    /// (++): all three frequencies comparable and L_max ~ H.
    PlusPlusCoherent,
    /// (+−): two large comparable frequencies dominate the third, and the
    /// small-frequency factor carries the resonance-sized modulation.
    PlusMinusCoherent,
    /// Everything else.
    Generic,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BlockBound {
    pub value: f64,
    pub case: BlockCase,
}

/// Closed-form upper bound for the trilinear norm of one dyadic block:
///
/// ```text
/// (a) (++) coherent:  L_min^{1/2} N_max^{−2} L_med^{1/2}
/// (b) (+−) coherent:  L_min^{1/2} N_max^{−2} min(H, (N_max/N_min) L_med)^{1/2}
/// (c) otherwise:      L_min^{1/2} N_max^{−2} min(H, L_med)^{1/2}
/// ```
pub fn block_bound(spec: &DyadicBlockSpec) -> Result<BlockBound, MultiplierError> {
    spec.admissibility()?;

    let l_min = spec.l_min();
    let l_med = spec.l_med();
    let n_max = spec.n_max();
    let n_min = spec.n_min();
    let base = l_min.sqrt() * n_max.powi(-2);

    // (a): all frequencies comparable and the largest modulation carries H
    let plus_plus = comparable(n_max, n_min) && comparable(spec.l_max(), spec.h);
    if plus_plus {
        return Ok(BlockBound {
            value: base * l_med.sqrt(),
            case: BlockCase::PlusPlusCoherent,
        });
    }

    // (b): N_j ~ N_k >> N_i and H ~ L_i >= L_j, L_k for some permutation i
    let ns = spec.ns();
    let ls = spec.ls();
    let mut plus_minus = false;
    for i in 0..3 {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        let two_big = comparable(ns[j], ns[k])
            && ns[j] > COMPARABLE_FACTOR * ns[i]
            && ns[k] > COMPARABLE_FACTOR * ns[i];
        let small_carries_h =
            comparable(ls[i], spec.h) && ls[i] >= ls[j] && ls[i] >= ls[k];
        if two_big && small_carries_h {
            plus_minus = true;
            break;
        }
    }
    if plus_minus {
        let cap = spec.h.min(n_max / n_min * l_med);
        return Ok(BlockBound {
            value: base * cap.sqrt(),
            case: BlockCase::PlusMinusCoherent,
        });
    }

    Ok(BlockBound {
        value: base * spec.h.min(l_med).sqrt(),
        case: BlockCase::Generic,
    })
}
