//! The full table of L²-Dolbeault dimensions for both closed extensions of
//! the Cauchy-Riemann operator, with the Riemann-Roch identity checks.
//!
//! Run with: cargo run --example cohomology_table

use dolbeault::cohomology::{check_rr_s, check_rr_w, full_table, Extension, Mode};
use dolbeault::curve::{validate, BranchRef, Component, CurveSpec, LineBundleSpec, SingularPoint};

fn show(name: &str, spec: &CurveSpec, bundle: &LineBundleSpec) {
    let curve = validate(spec).unwrap();
    let table = full_table(&curve, bundle, Mode::Exact).unwrap();
    println!(
        "== {} (m = {}, g = {}, deg L = {}, deg(Z-|Z|) = {})",
        name,
        curve.m(),
        curve.genus(),
        curve.bundle_degree(bundle).unwrap(),
        curve.deg_z_minus_abs_z()
    );
    println!("          q=0     q=1");
    for (tag, ext) in [("w", Extension::Weak), ("s", Extension::Strong)] {
        for p in 0..=1u8 {
            println!(
                "   h_{}^({},q)  {:>4}    {:>4}",
                tag,
                p,
                table.entry(ext, p, 0).to_string(),
                table.entry(ext, p, 1).to_string()
            );
        }
    }
    for id in check_rr_w(&table).into_iter().chain(check_rr_s(&table)) {
        println!(
            "   [{}] {}:  {}  vs  {}",
            if id.pass { "pass" } else { "FAIL" },
            id.name,
            id.lhs,
            id.rhs
        );
    }
    println!();
}

fn main() {
    let cusp = CurveSpec {
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
        provenance: Some("cuspidal cubic".into()),
    };
    show(
        "cuspidal cubic, trivial bundle",
        &cusp,
        &LineBundleSpec::trivial(),
    );

    let node = CurveSpec {
        components: vec![Component {
            id: "c1".into(),
            genus: 0,
        }],
        singular_points: vec![SingularPoint {
            id: "p1".into(),
            branches: vec![
                BranchRef {
                    component: "c1".into(),
                    s: 1,
                },
                BranchRef {
                    component: "c1".into(),
                    s: 1,
                },
            ],
        }],
        provenance: Some("nodal cubic".into()),
    };
    show(
        "nodal cubic, bundle of degree 3",
        &node,
        &LineBundleSpec::from_degrees(&[("c1", 3)]),
    );

    let smooth = CurveSpec {
        components: vec![Component {
            id: "c1".into(),
            genus: 2,
        }],
        singular_points: vec![],
        provenance: Some("smooth genus-2 curve".into()),
    };
    show(
        "smooth genus 2, bundle of degree 5",
        &smooth,
        &LineBundleSpec::from_degrees(&[("c1", 5)]),
    );

    // two components, one with a higher cusp: corrections split per component
    let two = CurveSpec {
        components: vec![
            Component {
                id: "c1".into(),
                genus: 1,
            },
            Component {
                id: "c2".into(),
                genus: 0,
            },
        ],
        singular_points: vec![SingularPoint {
            id: "p1".into(),
            branches: vec![BranchRef {
                component: "c1".into(),
                s: 3,
            }],
        }],
        provenance: None,
    };
    show(
        "two components with an E6 point on the first",
        &two,
        &LineBundleSpec::from_degrees(&[("c1", 4), ("c2", -2)]),
    );
}
