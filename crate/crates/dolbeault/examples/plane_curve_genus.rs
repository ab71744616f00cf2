//! Plane-curve ingestion: singular-point detection by exact elimination and
//! genus computation by the degree-genus formula with delta corrections.
//!
//! Run with: cargo run --example plane_curve_genus

use dolbeault::plane::{from_plane_curve, Chart, PlaneCurveInput, TriPoly};
use dolbeault::puiseux::ExpandOptions;

fn ingest(name: &str, factors: &[&str]) {
    let input = PlaneCurveInput {
        factors: factors.iter().map(|t| TriPoly::parse(t).unwrap()).collect(),
        chart: Chart::Z,
    };
    let analysis = from_plane_curve(&input, &[], &ExpandOptions::default()).unwrap();
    println!("== {}", name);
    for (i, c) in analysis.spec.components.iter().enumerate() {
        println!(
            "   component {} (degree {}): genus {}",
            c.id, analysis.degrees[i], c.genus
        );
    }
    if analysis.points.is_empty() {
        println!("   no singular points");
    }
    for p in &analysis.points {
        println!(
            "   singular point {} at {} (x{} conjugates): mult {}, mult' {}, delta {}",
            p.id,
            p.location,
            p.conjugate_points,
            p.invariants.multiplicity,
            p.invariants.mult_prime,
            p.invariants.delta
        );
        for b in &p.branches {
            println!(
                "      branch on c{}: multiplicity {}, {}",
                b.component + 1,
                b.multiplicity,
                b.parametrization
            );
        }
    }
    println!(
        "   curve spec: {}\n",
        serde_json::to_string(&analysis.spec).unwrap()
    );
}

fn main() {
    ingest("cuspidal cubic", &["y^2*z - x^3"]);
    ingest("nodal cubic", &["y^2*z - x^3 - x^2*z"]);
    ingest("smooth quartic", &["x^4 + y^4 - z^4"]);
    ingest("conic pair (two tacnodes)", &["y*z - x^2", "y*z + x^2"]);
    ingest(
        "conic with secant line (conjugate nodes)",
        &["x^2 + y^2 - 3*z^2", "x - y"],
    );
}
