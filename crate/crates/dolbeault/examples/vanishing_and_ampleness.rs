//! Degree bounds: the vanishing threshold for h_w^{0,1} and the very-
//! ampleness bound for locally irreducible curves, with the conductor
//! exponents computed from the branch data.
//!
//! Run with: cargo run --example vanishing_and_ampleness

use dolbeault::cohomology::{
    ample_degree_bound, full_table, vanishing_threshold, DimValue, Extension, Mode,
};
use dolbeault::curve::{validate, BranchRef, Component, CurveSpec, LineBundleSpec, SingularPoint};
use dolbeault::puiseux::{conductor_exponent, puiseux_expand, BiPoly, ExpandOptions};
use std::collections::BTreeMap;

fn main() {
    // conductor exponents straight from local equations
    println!("conductor exponents (eta = 2*delta for unibranch points):");
    for (name, eq) in [
        ("cusp", "w^2 - z^3"),
        ("ramphoid", "w^2 - z^5"),
        ("E6", "w^3 - z^4"),
    ] {
        let f = BiPoly::parse(eq).unwrap();
        let branches = puiseux_expand(&f, &ExpandOptions::default()).unwrap();
        let eta = conductor_exponent(&branches[0]).unwrap();
        println!("   {:<10} eta = {}", name, eta);
    }

    // the cuspidal cubic: vanishing threshold and the ample bound
    let cusp = validate(&CurveSpec {
        components: vec![Component {
            id: "c1".into(),
            genus: 0,
        }],
        singular_points: vec![SingularPoint {
            id: "p1".into(),
            branches: vec![BranchRef {
                component: "c1".into(),
                s: 2,
            }],
        }],
        provenance: None,
    })
    .unwrap();

    let t = vanishing_threshold(&cusp);
    println!(
        "\ncuspidal cubic: vanishing threshold 2g - 2 - sum mult' = {}",
        t
    );
    for extra in 1..=5 {
        let bundle = LineBundleSpec::from_degrees(&[("c1", t + extra)]);
        let table = full_table(&cusp, &bundle, Mode::Exact).unwrap();
        let h01 = table.entry(Extension::Weak, 0, 1);
        println!("   deg L = {:>3}: h_w^(0,1) = {}", t + extra, h01);
        assert_eq!(h01, DimValue::exact(0));
    }

    let mut eta = BTreeMap::new();
    eta.insert("p1".to_string(), 2u64); // cusp conductor
    let bound = ample_degree_bound(&cusp, &eta).unwrap();
    println!(
        "\nample bound 2g + k + sum eta = {}: bundles of strictly larger degree are very ample",
        bound
    );

    // a genus-1 curve with an E6 cusp: 2g + k + eta = 2 + 1 + 6
    let e6 = validate(&CurveSpec {
        components: vec![Component {
            id: "c1".into(),
            genus: 1,
        }],
        singular_points: vec![SingularPoint {
            id: "p1".into(),
            branches: vec![BranchRef {
                component: "c1".into(),
                s: 3,
            }],
        }],
        provenance: None,
    })
    .unwrap();
    let mut eta = BTreeMap::new();
    eta.insert("p1".to_string(), 6u64);
    println!(
        "genus-1 curve with an E6 point: ample bound = {}",
        ample_degree_bound(&e6, &eta).unwrap()
    );
}
