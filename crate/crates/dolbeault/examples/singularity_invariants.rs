//! Per-point singularity invariants from Puiseux data.
//!
//! For each fixture in the corpus: multiplicity (and its agreement with the
//! degree of the initial form), modified multiplicity mult', the delta
//! invariant, branch count, and the conductor exponent of unibranch points.
//!
//! Run with: cargo run --example singularity_invariants

use dolbeault::corpus::singularity_corpus;
use dolbeault::exact::Tower;
use dolbeault::puiseux::invariants::compute_invariants_in;
use dolbeault::puiseux::{multiplicity_initial_form, BiPoly, ExpandOptions};

fn main() {
    println!(
        "{:<28} {:>4} {:>5} {:>5} {:>8} {:>4}",
        "singularity", "mult", "mult'", "delta", "branches", "eta"
    );
    for fix in singularity_corpus() {
        let f = BiPoly::parse(fix.equation).unwrap();
        let (_, _, inv) =
            compute_invariants_in(Tower::rationals(), &f, &ExpandOptions::default()).unwrap();
        let init = multiplicity_initial_form(&f).unwrap();
        assert_eq!(init, inv.multiplicity, "multiplicity chain broke");
        println!(
            "{:<28} {:>4} {:>5} {:>5} {:>8} {:>4}",
            fix.name,
            inv.multiplicity,
            inv.mult_prime,
            inv.delta,
            inv.branch_count,
            inv.conductor
                .map(|c| c.to_string())
                .unwrap_or_else(|| "-".into()),
        );
        assert_eq!(inv.multiplicity, fix.multiplicity);
        assert_eq!(inv.delta, fix.delta);
    }
    println!("\nall values agree with the frozen corpus table");
}
