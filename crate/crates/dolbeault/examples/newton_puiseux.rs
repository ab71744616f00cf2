//! Newton-Puiseux expansion of plane-curve singularities.
//!
//! Expands the branches of several classical singular points, printing the
//! Newton polygon, each branch parametrization t ↦ (t^s, w(t)) with exact
//! coefficients (in extension generators where needed), and the conjugacy
//! counts.
//!
//! Run with: cargo run --example newton_puiseux

use dolbeault::puiseux::{newton_polygon, puiseux_expand, BiPoly, ExpandOptions};

fn main() {
    let curves = [
        ("cusp", "w^2 - z^3"),
        ("node", "w^2 - z^2 - z^3"),
        ("irrational node", "w^2 - 2*z^2 - 2*z^3"),
        ("ordinary triple point", "w^3 - z^3"),
        (
            "ramphoid variant (w - z^2)^2 = z^5",
            "w^2 - 2*z^2*w + z^4 - z^5",
        ),
        ("E8", "w^3 - z^5"),
    ];
    for (name, text) in curves {
        let f = BiPoly::parse(text).unwrap();
        println!("== {} : {} = 0", name, text);
        let np = newton_polygon(&f).unwrap();
        for e in &np.edges {
            println!(
                "   edge slope {}/{} (lattice length {}), points {:?}",
                e.rise, e.run, e.length, e.points
            );
        }
        let branches = puiseux_expand(&f, &ExpandOptions::default()).unwrap();
        for b in &branches {
            println!("   branch {}", b);
        }
        println!();
    }

    // tangent alignment: rotate each branch into the normal form with the
    // tangent cone along the z-axis, so ord w(t) >= s + 1
    let f = BiPoly::parse("z - w^2").unwrap();
    let opts = ExpandOptions {
        tangent_aligned: true,
        ..Default::default()
    };
    let branches = puiseux_expand(&f, &opts).unwrap();
    println!("== steep branch z = w^2, tangent-aligned:");
    for b in &branches {
        println!("   branch {} (aligned: {})", b, b.tangent_aligned());
    }
}
