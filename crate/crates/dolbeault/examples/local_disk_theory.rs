//! The local weighted-disk picture at a unibranch model point: the sixteen
//! cohomology groups of the four closed extensions as monomial filtrations,
//! and the L²-membership matrix that produces them.
//!
//! Run with: cargo run --example local_disk_theory [s]

use dolbeault::cohomology::{local_table, weak_gain, LocalExt};
use dolbeault::disk::{
    monomial_in_l2, pullback_weight_exponent, quadrature_membership, WeightedDisk,
};

fn main() {
    let s: u32 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(3);
    println!("model point with multiplicity s = {}\n", s);

    println!("pullback weight exponents (1-p-q)(s-1):");
    for p in 0..=1u8 {
        for q in 0..=1u8 {
            println!("   ({},{}) -> {}", p, q, pullback_weight_exponent(p, q, s));
        }
    }

    println!("\nlocal cohomology groups:");
    let table = local_table(s);
    for ((ext, p, q), group) in &table.entries {
        let tag = match ext {
            LocalExt::W => "w  ",
            LocalExt::S => "s  ",
            LocalExt::SW => "s,w",
            LocalExt::WS => "w,s",
        };
        println!("   H_({})^({},{}) = {}", tag, p, q, group);
    }
    println!(
        "\nweak gains {} monomial exponents over strong (k in [{}, -1]) = mult' = s - 1",
        weak_gain(s),
        1 - s as i64
    );

    // membership matrix: quadrature classification against the analytic rule
    let alpha = (s - 1) as f64;
    let disk = WeightedDisk::new(alpha);
    println!(
        "\nmembership of t^k under the weight |t|^{{2(s-1)}} (s = {}):",
        s
    );
    println!("   k: analytic | quadrature");
    for k in -6..=6i64 {
        let analytic = monomial_in_l2(k, alpha);
        let quad = quadrature_membership(k, alpha, &disk).unwrap();
        println!(
            "   {:>3}: {:<9} | {}",
            k,
            if analytic { "in L2" } else { "not in L2" },
            quad
        );
        assert_eq!(analytic, quad.is_convergent());
    }
}
