//! Randomized lower estimation of the trilinear multiplier norm of a dyadic
//! block.
//!
//! The norm is the best constant C in
//!
//! ```text
//! | ∫_{Σζⱼ=0} m(ζ) f₁(ζ₁) f₂(ζ₂) f₃(ζ₃) | ≤ C ‖f₁‖ ‖f₂‖ ‖f₃‖,  ζⱼ = (ξⱼ, λⱼ)
//! ```
//!
//! — a supremum over test functions, so any concrete triple certifies a lower
//! bound. Test functions are piecewise constant on (ξ, λ) cells over the
//! block's support (per-coordinate sheared variables λⱼ = τⱼ − ξⱼ⁵, both sign
//! components). The ξ integrals use midpoint nodes with the resonance
//! function evaluated exactly per node; the λ integrals are computed in
//! closed form — for a fixed node the constraint λ₃ = −λ₁ − λ₂ − h(ξ) makes
//! the cell-triple weight the area of a diagonal band inside a rectangle,
//! which keeps the estimator honest where the modulation boxes are thin
//! compared to the per-cell swing of h. Alternating maximization from random
//! starts climbs toward the supremum; the running maximum over restarts is
//! monotone in the trial count.

use super::block::DyadicBlockSpec;
use super::resonance::resonance_h;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct EstimatorOptions {
    /// ξ cells per dyadic interval (each sign component).
    pub n_xi: usize,
    /// Midpoint ξ nodes per cell and direction.
    pub xi_subsample: usize,
    /// λ cells per dyadic interval.
    pub n_lambda: usize,
    /// Random restarts (the "trials" budget); capped at 10⁴.
    pub trials: usize,
    /// Stop refining after this many rounds with relative improvement < tol.
    pub patience: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        EstimatorOptions {
            n_xi: 16,
            xi_subsample: 2,
            n_lambda: 6,
            trials: 4,
            patience: 10,
            tol: 5e-3,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct BlockNormEstimate {
    /// Lower estimate of the block norm (0 when the support is empty).
    pub value: f64,
    /// True when no ξ node pair satisfies the frequency and resonance
    /// constraints with reachable modulations.
    pub support_empty: bool,
    pub trials_used: usize,
    /// Running maximum after each trial (nondecreasing).
    pub history: Vec<f64>,
}

/// Support geometry of one factor: interval lists for both coordinates,
/// cells indexed (ξ-component, λ-component) row-major.
#[derive(Debug, Clone)]
struct FnGrid {
    xi_cells: Vec<(f64, f64)>,
    lam_cells: Vec<(f64, f64)>,
}

impl FnGrid {
    fn new(n_freq: f64, l_mod: f64, n_xi: usize, n_lam: usize) -> Self {
        let mut xi_cells = Vec::with_capacity(2 * n_xi);
        let d_xi = n_freq / n_xi as f64;
        for i in 0..n_xi {
            let lo = -2.0 * n_freq + i as f64 * d_xi;
            xi_cells.push((lo, lo + d_xi)); // negative component, ascending
        }
        for i in 0..n_xi {
            let lo = n_freq + i as f64 * d_xi;
            xi_cells.push((lo, lo + d_xi));
        }
        let mut lam_cells = Vec::with_capacity(2 * n_lam);
        let d_lam = l_mod / n_lam as f64;
        for i in 0..n_lam {
            let lo = -2.0 * l_mod + i as f64 * d_lam;
            lam_cells.push((lo, lo + d_lam));
        }
        for i in 0..n_lam {
            let lo = l_mod + i as f64 * d_lam;
            lam_cells.push((lo, lo + d_lam));
        }
        FnGrid { xi_cells, lam_cells }
    }

    fn cells(&self) -> usize {
        self.xi_cells.len() * self.lam_cells.len()
    }

    fn flat(&self, xi_idx: usize, lam_idx: usize) -> usize {
        xi_idx * self.lam_cells.len() + lam_idx
    }

    fn xi_cell_of(&self, xi: f64) -> Option<usize> {
        self.xi_cells
            .iter()
            .position(|&(lo, hi)| xi >= lo && xi < hi)
    }

    fn cell_area(&self) -> f64 {
        let dx = self.xi_cells[0].1 - self.xi_cells[0].0;
        let dl = self.lam_cells[0].1 - self.lam_cells[0].0;
        dx * dl
    }
}

/// measure{ x ∈ [a0,a1], y ∈ [b0,b1] : x + y ≤ s } (piecewise quadratic).
fn corner_area(a0: f64, a1: f64, b0: f64, b1: f64, s: f64) -> f64 {
    let u = (s - a0 - b0).clamp(0.0, f64::INFINITY);
    let da = a1 - a0;
    let db = b1 - b0;
    let (lo, hi) = (da.min(db), da.max(db));
    if u <= 0.0 {
        0.0
    } else if u <= lo {
        0.5 * u * u
    } else if u <= hi {
        lo * (u - 0.5 * lo)
    } else if u < lo + hi {
        da * db - 0.5 * (lo + hi - u) * (lo + hi - u)
    } else {
        da * db
    }
}

/// measure{ (x, y) in the rectangle : s_lo < x + y ≤ s_hi }.
fn band_area(a: (f64, f64), b: (f64, f64), s_lo: f64, s_hi: f64) -> f64 {
    (corner_area(a.0, a.1, b.0, b.1, s_hi) - corner_area(a.0, a.1, b.0, b.1, s_lo)).max(0.0)
}

/// One admissible ξ node pair: cell indices of the three factors, the node's
/// resonance value, and its ξ quadrature weight.
struct XiEntry {
    c1: usize,
    c2: usize,
    c3: usize,
    h: f64,
    weight: f64,
}

fn enumerate_nodes(spec: &DyadicBlockSpec, opts: &EstimatorOptions, grids: &[FnGrid; 3]) -> Vec<XiEntry> {
    let q = opts.xi_subsample.max(1);
    let mut entries = Vec::new();
    let nodes = |cells: &[(f64, f64)]| -> Vec<(usize, f64, f64)> {
        // (cell index, node position, node weight)
        let mut v = Vec::new();
        for (idx, &(lo, hi)) in cells.iter().enumerate() {
            let d = (hi - lo) / q as f64;
            for k in 0..q {
                v.push((idx, lo + (k as f64 + 0.5) * d, d));
            }
        }
        v
    };
    let n1 = nodes(&grids[0].xi_cells);
    let n2 = nodes(&grids[1].xi_cells);
    for &(c1, xi1, w1) in &n1 {
        for &(c2, xi2, w2) in &n2 {
            let xi3 = -(xi1 + xi2);
            let Some(c3) = grids[2].xi_cell_of(xi3) else {
                continue;
            };
            let h = resonance_h(xi1, xi2);
            if !(spec.h..2.0 * spec.h).contains(&h.abs()) {
                continue;
            }
            entries.push(XiEntry {
                c1,
                c2,
                c3,
                h,
                weight: w1 * w2,
            });
        }
    }
    entries
}

/// Lower-estimate the block norm; see module docs for the quadrature scheme.
pub fn estimate_block_norm(spec: &DyadicBlockSpec, opts: &EstimatorOptions) -> BlockNormEstimate {
    let trials = opts.trials.min(10_000);
    let grids = [
        FnGrid::new(spec.n1, spec.l1, opts.n_xi, opts.n_lambda),
        FnGrid::new(spec.n2, spec.l2, opts.n_xi, opts.n_lambda),
        FnGrid::new(spec.n3, spec.l3, opts.n_xi, opts.n_lambda),
    ];
    let entries = enumerate_nodes(spec, opts, &grids);

    // reachability of the modulation constraint across all entries
    let lam_reachable = entries.iter().any(|e| {
        let lam3_full = (
            grids[2].lam_cells.first().unwrap().0,
            grids[2].lam_cells.last().unwrap().1,
        );
        grids[0].lam_cells.iter().any(|&l1| {
            grids[1].lam_cells.iter().any(|&l2| {
                band_area(l1, l2, -lam3_full.1 - e.h, -lam3_full.0 - e.h) > 0.0
            })
        })
    });
    if entries.is_empty() || !lam_reachable {
        return BlockNormEstimate {
            value: 0.0,
            support_empty: true,
            trials_used: 0,
            history: Vec::new(),
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sizes = [grids[0].cells(), grids[1].cells(), grids[2].cells()];
    let areas = [
        grids[0].cell_area(),
        grids[1].cell_area(),
        grids[2].cell_area(),
    ];
    let mut best = 0.0f64;
    let mut history = Vec::with_capacity(trials);

    for trial in 0..trials {
        let mut f: [Vec<f64>; 3] = [
            random_unit(&mut rng, sizes[0], areas[0]),
            random_unit(&mut rng, sizes[1], areas[1]),
            random_unit(&mut rng, sizes[2], areas[2]),
        ];
        if trial == 0 {
            // flat start spreads mass over the whole support
            for j in 0..3 {
                let mut flat = vec![1.0; sizes[j]];
                normalize(&mut flat, areas[j]);
                f[j] = flat;
            }
        }

        let mut current = form_value(&entries, &grids, &f);
        let mut stall = 0usize;
        while stall < opts.patience {
            for j in 0..3 {
                let grad = gradient(&entries, &grids, &f, j);
                let mut next = grad;
                normalize(&mut next, areas[j]);
                if next.iter().all(|v| *v == 0.0) {
                    break;
                }
                f[j] = next;
            }
            let value = form_value(&entries, &grids, &f);
            if value <= current * (1.0 + opts.tol) {
                stall += 1;
            } else {
                stall = 0;
            }
            current = current.max(value);
        }
        best = best.max(current);
        history.push(best);
    }

    BlockNormEstimate {
        value: best,
        support_empty: false,
        trials_used: trials,
        history,
    }
}

/// S(f₁,f₂,f₃) for unit-normalized factors: ξ by midpoint nodes, λ exactly.
fn form_value(entries: &[XiEntry], grids: &[FnGrid; 3], f: &[Vec<f64>; 3]) -> f64 {
    let mut s = 0.0;
    for e in entries {
        s += e.weight * lambda_form(e, grids, f);
    }
    s
}

/// ∬ f₁(λ₁) f₂(λ₂) f₃(−λ₁−λ₂−h) dλ₁ dλ₂ at one ξ node, exact.
fn lambda_form(e: &XiEntry, grids: &[FnGrid; 3], f: &[Vec<f64>; 3]) -> f64 {
    let g3 = &grids[2];
    let mut acc = 0.0;
    for (i1, &l1) in grids[0].lam_cells.iter().enumerate() {
        let f1 = f[0][grids[0].flat(e.c1, i1)];
        if f1 == 0.0 {
            continue;
        }
        for (i2, &l2) in grids[1].lam_cells.iter().enumerate() {
            let f2 = f[1][grids[1].flat(e.c2, i2)];
            if f2 == 0.0 {
                continue;
            }
            // λ₃ ∈ [c_lo, c_hi] ⇔ λ₁+λ₂ ∈ [−c_hi−h, −c_lo−h]
            for (i3, &l3) in g3.lam_cells.iter().enumerate() {
                let w = band_area(l1, l2, -l3.1 - e.h, -l3.0 - e.h);
                if w > 0.0 {
                    acc += f1 * f2 * f[2][g3.flat(e.c3, i3)] * w;
                }
            }
        }
    }
    acc
}

/// ∂S/∂f_j, accumulated per cell of factor j.
fn gradient(entries: &[XiEntry], grids: &[FnGrid; 3], f: &[Vec<f64>; 3], j: usize) -> Vec<f64> {
    let mut grad = vec![0.0f64; grids[j].cells()];
    for e in entries {
        let cells = [e.c1, e.c2, e.c3];
        for (i1, &l1) in grids[0].lam_cells.iter().enumerate() {
            let f1 = f[0][grids[0].flat(e.c1, i1)];
            if j != 0 && f1 == 0.0 {
                continue;
            }
            for (i2, &l2) in grids[1].lam_cells.iter().enumerate() {
                let f2 = f[1][grids[1].flat(e.c2, i2)];
                if j != 1 && f2 == 0.0 {
                    continue;
                }
                for (i3, &l3) in grids[2].lam_cells.iter().enumerate() {
                    let w = band_area(l1, l2, -l3.1 - e.h, -l3.0 - e.h);
                    if w == 0.0 {
                        continue;
                    }
                    let f3 = f[2][grids[2].flat(e.c3, i3)];
                    let lam_idx = [i1, i2, i3];
                    let others = match j {
                        0 => f2 * f3,
                        1 => f1 * f3,
                        _ => f1 * f2,
                    };
                    grad[grids[j].flat(cells[j], lam_idx[j])] += e.weight * w * others;
                }
            }
        }
    }
    grad
}

fn random_unit(rng: &mut ChaCha8Rng, size: usize, area: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..size).map(|_| rng.gen_range(0.0..1.0)).collect();
    normalize(&mut v, area);
    v
}

fn normalize(v: &mut [f64], area: f64) {
    let norm = (v.iter().map(|x| x * x).sum::<f64>() * area).sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplier::block::block_bound;

    #[test]
    fn corner_area_is_monotone_and_exact_at_extremes() {
        let (a, b) = ((0.0, 2.0), (1.0, 2.5));
        assert_eq!(corner_area(a.0, a.1, b.0, b.1, 0.9), 0.0);
        assert!((corner_area(a.0, a.1, b.0, b.1, 10.0) - 3.0).abs() < 1e-14);
        let mut prev = 0.0;
        for i in 0..=100 {
            let s = 0.5 + 4.5 * i as f64 / 100.0;
            let v = corner_area(a.0, a.1, b.0, b.1, s);
            assert!(v >= prev - 1e-14);
            prev = v;
        }
        // total band decomposition: sum of disjoint bands = full area
        let full: f64 = [(1.0, 2.0), (2.0, 3.0), (3.0, 4.5)]
            .iter()
            .map(|&(lo, hi)| band_area(a, b, lo, hi))
            .sum();
        assert!((full - 3.0).abs() < 1e-12);
    }

    #[test]
    fn equal_dyadic_frequencies_have_empty_support() {
        // |ξ₁|,|ξ₂| ∈ [4,8) same sign pushes |ξ₃| ≥ 8, opposite signs pull
        // it below 4: the all-equal block vanishes identically.
        let h = 2f64.powi(10);
        let spec = DyadicBlockSpec::new([4.0, 4.0, 4.0], h, [1.0, 1.0, h]).unwrap();
        let est = estimate_block_norm(&spec, &EstimatorOptions::default());
        assert!(est.support_empty);
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn vanishing_when_nmed_not_comparable_nmax() {
        let spec = DyadicBlockSpec::new([1.0, 1.0, 64.0], 64.0, [1.0, 1.0, 64.0]).unwrap();
        let est = estimate_block_norm(&spec, &EstimatorOptions::default());
        assert!(est.support_empty && est.value == 0.0);
    }

    #[test]
    fn vanishing_when_lmax_inconsistent() {
        // L_max far above both H and L_med: λ₁+λ₂+λ₃ = −h unreachable
        let spec =
            DyadicBlockSpec::new([4.0, 4.0, 8.0], 2f64.powi(15), [2f64.powi(20), 1.0, 1.0])
                .unwrap();
        let est = estimate_block_norm(&spec, &EstimatorOptions::default());
        assert!(est.support_empty && est.value == 0.0);
    }

    #[test]
    fn coherent_block_estimate_stays_under_eight_times_bound() {
        // (N, N, 2N): |h| over the box starts near 5·4·4·8·48 ≈ 2^14.9, so
        // the resonance band [2^15, 2^16) is populated and within factor 16
        // of N_max⁴ N_min = 2^14.
        let h = 2f64.powi(15);
        let spec = DyadicBlockSpec::new([4.0, 4.0, 8.0], h, [1.0, 1.0, h]).unwrap();
        assert!(spec.is_admissible());
        let est = estimate_block_norm(&spec, &EstimatorOptions::default());
        assert!(!est.support_empty, "support should be nonempty");
        assert!(est.value > 0.0);
        let bound = block_bound(&spec).unwrap();
        assert!(
            est.value <= 8.0 * bound.value,
            "estimate {} exceeds 8 x bound {}",
            est.value,
            bound.value
        );
    }

    #[test]
    fn estimate_respects_fiber_upper_bound() {
        // Cauchy–Schwarz cap: ‖X‖² ≤ sup_{ζ₂} measure{ζ₁ : constraints},
        // evaluated generously: λ-fiber ≤ min total λ₁/λ₃ extent, ξ-fiber
        // ≤ min(ξ₁-extent, H / min|∂h/∂ξ₁|) over the box.
        let spec = DyadicBlockSpec::new([4.0, 2.0, 1.0], 512.0, [2.0, 512.0, 1.0]).unwrap();
        let est = estimate_block_norm(&spec, &EstimatorOptions::default());
        let lam_fiber = (2.0 * spec.l1).min(2.0 * spec.l3) * 2.0; // both signs
        // |∂h/∂ξ₁| ≥ 5(4⁴ − 4⁴/…) : crude floor 5(N1⁴ − N2⁴-corner) — use the
        // smallest corner gap 5·(4⁴ − 4⁴·0) is too crude; take 5(ξ₁⁴−ξ₂⁴)
        // minimized over the box: 5(4⁴ − 4⁴)=0 is unreachable since |ξ₂|<4≤|ξ₁|
        // only at the shared corner; a safe floor is 5(4⁴−4⁴) → fall back to
        // the ξ-box extent itself.
        let xi_fiber = spec.n1; // extent of one sign component
        let cap = (lam_fiber * xi_fiber).sqrt();
        assert!(
            est.value <= cap,
            "estimate {} exceeds fiber cap {cap}",
            est.value
        );
    }

    #[test]
    fn estimate_monotone_in_trials() {
        let h = 2f64.powi(15);
        let spec = DyadicBlockSpec::new([4.0, 4.0, 8.0], h, [1.0, 1.0, h]).unwrap();
        let opts = EstimatorOptions {
            trials: 5,
            ..Default::default()
        };
        let est = estimate_block_norm(&spec, &opts);
        for w in est.history.windows(2) {
            assert!(w[1] >= w[0]);
        }
        // prefix property: fewer trials give a prefix of the same history
        let short = estimate_block_norm(
            &spec,
            &EstimatorOptions {
                trials: 2,
                ..Default::default()
            },
        );
        assert_eq!(short.history[..], est.history[..2]);
        assert!(short.value <= est.value);
    }
}
