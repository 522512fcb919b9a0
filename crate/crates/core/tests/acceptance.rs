use std::sync::OnceLock;

use prandtl_core::verify::{self, CheckOutcome, MatrixCase};
use prandtl_core::Result;

fn cases() -> &'static Result<Vec<MatrixCase>> {
    static CASES: OnceLock<Result<Vec<MatrixCase>>> = OnceLock::new();
    CASES.get_or_init(verify::preset_matrix)
}

fn report(o: CheckOutcome) {
    println!("{}", o.line());
    assert!(o.passed, "{}", o.line());
}

#[test]
fn c01_multiplier_identity() {
    report(verify::check_multiplier_identity());
}

#[test]
fn c02_coth_image() {
    report(verify::check_coth_image());
}

#[test]
fn c03_parseval() {
    report(verify::check_parseval());
}

#[test]
fn c04_oracle_triangulation() {
    report(verify::check_triangulation());
}

#[test]
fn c05_elliptic_closed_form() {
    report(verify::check_elliptic());
}

#[test]
fn c06_weak_bound() {
    report(verify::check_weak_bound(cases()));
}

#[test]
fn c07_strong_bound() {
    report(verify::check_strong_bound(cases()));
}

#[test]
fn c08_interpolated_bound() {
    report(verify::check_interpolation_bound(cases()));
}

#[test]
fn c09_sup_embedding() {
    report(verify::check_embedding(cases(), 20));
}

#[test]
fn c10_multiplier_bounds() {
    report(verify::check_multiplier_bounds());
}

#[test]
fn c11_grid_convergence() {
    report(verify::check_grid_convergence(false));
}

#[test]
fn full_suite_table() {
    let outcomes = verify::run_suite(false);
    println!("{}", verify::format_table(&outcomes));
    assert_eq!(outcomes.len(), 11);
    assert!(outcomes.iter().all(|o| o.passed));
}
