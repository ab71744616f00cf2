//! L²-Serre duality h_w^{p,q}(L) = h_s^{1-p,1-q}(L^{-1}) and the two Euler
//! identities, verified on a seeded random corpus of curve specs.
//!
//! Run with: cargo run --example serre_duality_fuzz [seed]

use dolbeault::cohomology::{check_rr_s, check_rr_w, check_serre_duality, full_table, Mode};
use dolbeault::corpus::random_curve_spec;
use dolbeault::curve::validate;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = 200;
    let mut identities = 0usize;
    let mut failures = 0usize;
    for _ in 0..total {
        let (spec, bundle) = random_curve_spec(&mut rng);
        let curve = validate(&spec).unwrap();
        let table = full_table(&curve, &bundle, Mode::Generic).unwrap();
        for id in check_rr_w(&table)
            .into_iter()
            .chain(check_rr_s(&table))
            .chain(check_serre_duality(&curve, &bundle, Mode::Generic).unwrap())
        {
            identities += 1;
            if !id.pass {
                failures += 1;
                println!("FAIL: {} | {} | {}", id.name, id.lhs, id.rhs);
            }
        }
    }
    println!(
        "seed {}: {} random specs, {} identities checked, {} failures",
        seed, total, identities, failures
    );
    assert_eq!(failures, 0);
}
