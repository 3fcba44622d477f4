//! Runs the nine acceptance criteria at full trial counts and prints one line each.

use std::io::Write;

use penbench::harness::verify::{verify, VerifyOptions};

#[test]
fn acceptance_criteria() {
    let report = verify(&VerifyOptions::default()).expect("suite runs");
    // Written directly to stderr so the lines show without --nocapture.
    let mut err = std::io::stderr().lock();
    for c in &report.criteria {
        writeln!(err, "{}", c.line()).unwrap();
    }
    let failed: Vec<_> = report
        .criteria
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.id)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
