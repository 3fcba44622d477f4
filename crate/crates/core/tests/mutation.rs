//! The bit-sampling criterion must reject a commit rule that is too cautious.

use num_bigint::BigInt;
use num_rational::BigRational;
use penbench::bit_sampling::commit_probability_exact;
use penbench::harness::verify::bit_sampling_criterion_with;

#[test]
fn genuine_rule_passes() {
    let (passed, summary) = bit_sampling_criterion_with(&commit_probability_exact).unwrap();
    assert!(passed, "{summary}");
}

#[test]
fn halved_rule_fails() {
    let tampered = |delta: i64| -> BigRational {
        if delta <= -3 {
            BigRational::from_integer(BigInt::from(1))
        } else {
            BigRational::new(BigInt::from(1), BigInt::from(1) << (delta + 3) as usize)
        }
    };
    let (passed, summary) = bit_sampling_criterion_with(&tampered).unwrap();
    assert!(!passed, "{summary}");
}
