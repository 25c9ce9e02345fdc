//! Acceptance gate: runs the full suite and prints one pass/fail line per
//! criterion. Run with `cargo test --test acceptance -- --nocapture` to see
//! the table; failures dump the offending payloads.

use kuniv_core::acceptance::run_suite;

#[test]
fn acceptance_suite() {
    let suite = run_suite();
    print!("{}", suite.table());
    for c in &suite.criteria {
        assert!(
            c.passed,
            "criterion {} ({}) failed: {}",
            c.id, c.name, c.details
        );
    }
    assert!(suite.all_passed);
}
