//! The acceptance suite: one test per criterion, each printing its pass/fail
//! line.  Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines, or `dolbeault verify` for the same checks through the CLI.

use dolbeault::verify;

fn check(result: verify::CriterionResult) {
    println!("{}", result.line());
    assert!(result.pass, "{}", result.line());
}

#[test]
fn criterion_1_puiseux_substitution_oracle() {
    check(verify::substitution_oracle());
}

#[test]
fn criterion_2_multiplicity_chain() {
    check(verify::multiplicity_chain());
}

#[test]
fn criterion_3_riemann_roch_identities() {
    check(verify::rr_identity_fuzz(0));
}

#[test]
fn criterion_4_worked_tables() {
    check(verify::worked_tables());
}

#[test]
fn criterion_5_local_monomial_thresholds() {
    check(verify::local_monomial_thresholds());
}

#[test]
fn criterion_6_cauchy_solver() {
    check(verify::cauchy_solver());
}

#[test]
fn criterion_7_cutoff_decay() {
    check(verify::cutoff_decay());
}

#[test]
fn criterion_8_vanishing_consistency() {
    check(verify::vanishing_consistency(0));
}

#[test]
fn criterion_9_dimension_witness() {
    check(verify::dimension_witness());
}
