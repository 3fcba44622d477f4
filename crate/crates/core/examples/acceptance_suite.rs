//! Run selected acceptance criteria in fast mode.

use penbench::harness::verify::{verify, VerifyOptions};

fn main() -> penbench::Result<()> {
    let opts = VerifyOptions {
        fast: true,
        only: vec![3, 4, 5, 6, 9],
        ..VerifyOptions::default()
    };
    let report = verify(&opts)?;
    for c in &report.criteria {
        println!("{}", c.line());
    }
    println!("all passed: {}", report.passed);
    Ok(())
}
