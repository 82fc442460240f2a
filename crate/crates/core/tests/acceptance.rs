//! Acceptance criteria A1–A13, one PASS/FAIL line each.

use floer_core::verify::{run_suite, Suite, VerifyOptions};

#[test]
fn acceptance() {
    let results = run_suite(Suite::All, &VerifyOptions::default()).expect("suite runs");
    for r in &results {
        println!("{}", r.line());
    }
    assert_eq!(results.len(), 13);
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
