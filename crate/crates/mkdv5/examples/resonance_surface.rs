//! The resonance function h(ξ) = ξ₁⁵+ξ₂⁵+ξ₃⁵ on ξ₁+ξ₂+ξ₃ = 0: exact values,
//! the cancellation-proof factored form, and the Monte-Carlo check of
//! |h| ~ N_max⁴·N_min on the admissible cone.
//!
//! ```bash
//! cargo run --release -p mkdv5 --example resonance_surface
//! ```

use mkdv5::multiplier::{check_resonance_relation, resonance_h, resonance_h_expanded};

fn main() {
    println!("exact values:");
    for (a, b) in [(1.0, -1.0), (2.0, -1.0), (1.0, 1.0), (8.0, 8.0)] {
        println!("  h({a:4}, {b:4}) = {}", resonance_h(a, b));
    }

    println!("\ncatastrophic cancellation near ξ₂ = −ξ₁ (ξ₁ = 512, gap 2⁻²⁰):");
    let xi1 = 512.0;
    let eps = 2f64.powi(-20);
    let xi2 = -(512.0 - eps);
    let q = (xi1 * xi1 + xi2 * xi2) + xi1 * xi2;
    let exact = -5.0 * xi1 * xi2 * eps * q;
    println!("  exact     {exact:.12e}");
    println!("  factored  {:.12e}", resonance_h(xi1, xi2));
    println!("  expanded  {:.12e}   <- ~8 digits lost", resonance_h_expanded(xi1, xi2));

    println!("\nMonte-Carlo resonance relation |h|/(N_max^4 N_min) on 10^5 admissible triples:");
    let report = check_resonance_relation(100_000, 7);
    println!(
        "  ratio range [{:.5}, {:.5}]   (pinned band [1/32, 32]: holds = {})",
        report.ratio_min,
        report.ratio_max,
        report.relation_holds()
    );
    println!(
        "  worst factored-vs-expanded identity residual: {:.3e}",
        report.identity_residual
    );

    // the symmetric triple of the text: (N, N, −2N)
    let n = 8.0;
    let h = resonance_h(n, n);
    println!(
        "\nsymmetric triple (N, N, -2N) at N = {n}: |h| = {} = 30N⁵; |h|/(N_max⁴N_min) = {}",
        h.abs(),
        h.abs() / ((2.0 * n).powi(4) * n)
    );
}
