//! Dyadic block norms: closed-form bounds by coherence case, randomized
//! lower estimates that stay under them, and the exact vanishing of
//! incompatible blocks.
//!
//! ```bash
//! cargo run --release -p mkdv5 --example block_bounds
//! ```

use mkdv5::multiplier::{block_bound, estimate_block_norm, DyadicBlockSpec, EstimatorOptions};

fn main() {
    let opts = EstimatorOptions::default();
    let h15 = 2f64.powi(15);

    // H must sit in the |h| range the shells actually attain: the factored
    // form |h| = 5|ξ₁ξ₂ξ₃|·(ξ₁²+ξ₂²+ξ₃²)/2 puts the attained band a factor
    // ~5–30 above N_max⁴·N_min, which is exactly the slack the resonance
    // relation's [1/32, 32] constant describes.
    let specs: Vec<(&str, DyadicBlockSpec)> = vec![
        (
            "(++) coherent: N=(4,4,8), H=2^15 carried by L3",
            DyadicBlockSpec::new([4.0, 4.0, 8.0], h15, [1.0, 1.0, h15]).unwrap(),
        ),
        (
            "(+-) coherent: N=(1,8,8), H=2^15 carried by the small-N factor",
            DyadicBlockSpec::new([1.0, 8.0, 8.0], h15, [h15, 2.0, 1.0]).unwrap(),
        ),
        (
            "two large modulations: N=(2,4,4), H=2^12, L=(2^13,2^13,2)",
            DyadicBlockSpec::new(
                [2.0, 4.0, 4.0],
                2f64.powi(12),
                [2f64.powi(13), 2f64.powi(13), 2.0],
            )
            .unwrap(),
        ),
    ];

    println!("{:>62} {:>12} {:>12} {:>7} {:>16}", "spec", "estimate", "bound", "ratio", "case");
    for (name, spec) in &specs {
        let est = estimate_block_norm(spec, &opts);
        let bound = block_bound(spec).unwrap();
        println!(
            "{name:>62} {:>12.4e} {:>12.4e} {:>7.3} {:>16}",
            est.value,
            bound.value,
            est.value / bound.value,
            format!("{:?}", bound.case),
        );
    }

    println!("\nvanishing blocks (support empty by construction):");
    let vanishing = vec![
        (
            "N_med !~ N_max: N=(1,1,64)",
            DyadicBlockSpec::new([1.0, 1.0, 64.0], 64.0, [1.0, 1.0, 64.0]).unwrap(),
        ),
        (
            "L_max !~ max(H, L_med): L_max = 2^20 vs H = 2^15",
            DyadicBlockSpec::new([4.0, 4.0, 8.0], h15, [2f64.powi(20), 1.0, 1.0]).unwrap(),
        ),
        (
            "equal dyadic shells cannot close: N=(4,4,4)",
            DyadicBlockSpec::new([4.0, 4.0, 4.0], 2f64.powi(10), [1.0, 1.0, 2f64.powi(10)])
                .unwrap(),
        ),
    ];
    for (name, spec) in &vanishing {
        let est = estimate_block_norm(spec, &opts);
        println!(
            "  {name:55} estimate = {} (support empty: {})",
            est.value, est.support_empty
        );
    }
}
