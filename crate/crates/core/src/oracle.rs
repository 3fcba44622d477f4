//! Exact and brute-force references.
//!
//! * harmonic numbers, the expected maximum of `n` i.i.d. `Exp(1)` values;
//! * the good-over-passing bound on the power-count instance and the commit/observe
//!   dynamic program that attains it;
//! * an expectimax optimal player for tiny integer instances with full information;
//! * Monte Carlo probes of the geometric-order generator.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instances::nonuniform_geometric_order;
use crate::rng::trial_rng;
use crate::stats::MeanSe;

/// Largest `n` for which [`harmonic`] is evaluated exactly.
pub const HARMONIC_EXACT_LIMIT: usize = 20_000;

/// Largest `k` accepted by [`commit_observe_optimum`].
pub const COMMIT_DP_MAX_K: u32 = 6;

/// Size guards of [`optimal_online_dp`].
pub const ONLINE_DP_MAX_OPTIONS: usize = 8;
pub const ONLINE_DP_MAX_VALUE: u32 = 5;

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `H_n = 1 + 1/2 + ... + 1/n`, exactly.
pub fn harmonic(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::validation("harmonic number needs n >= 1"));
    }
    if n > HARMONIC_EXACT_LIMIT {
        return Err(Error::Resource(format!(
            "exact harmonic number limited to n <= {HARMONIC_EXACT_LIMIT}, got {n}"
        )));
    }
    let mut lcm = BigUint::one();
    for k in 1..=n {
        let kb = BigUint::from(k);
        if !(&lcm % &kb).is_zero() {
            lcm = lcm.lcm(&kb);
        }
    }
    let num: BigUint = (1..=n).map(|k| &lcm / BigUint::from(k)).sum();
    Ok(ratio(BigInt::from(num), BigInt::from(lcm)))
}

/// `H_n` in floating point by compensated summation from the smallest term.
pub fn harmonic_f64(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::validation("harmonic number needs n >= 1"));
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for k in (1..=n).rev() {
        let term = 1.0 / k as f64;
        let t = sum + term;
        comp += if sum.abs() >= term {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
    }
    Ok(sum + comp)
}

/// Result of a Monte Carlo check of `E[max] = H_n`.
#[derive(Debug, Clone, Serialize)]
pub struct ExpectedMaxCheck {
    pub n: usize,
    pub trials: usize,
    pub mean: f64,
    pub se: f64,
    pub target: f64,
    pub z: f64,
    pub passed: bool,
}

/// Mean of the maximum of `n` draws of `Exp(1)` over `trials` seeded trials, compared
/// with `H_n` at 4 standard errors.
pub fn expected_max_exponential_check(
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<ExpectedMaxCheck> {
    if trials < 10_000 {
        return Err(Error::validation(format!(
            "need at least 10^4 trials, got {trials}"
        )));
    }
    let target = harmonic_f64(n)?;
    let maxima: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            (0..n)
                .map(|_| rng.sample::<f64, _>(Exp1))
                .fold(0.0, f64::max)
        })
        .collect();
    let m = MeanSe::of(&maxima);
    let z = if m.se > 0.0 {
        (m.mean - target) / m.se
    } else {
        0.0
    };
    Ok(ExpectedMaxCheck {
        n,
        trials,
        mean: m.mean,
        se: m.se,
        target,
        z,
        passed: z.abs() <= 4.0,
    })
}

/// Good and bad passers of a test at `theta` on the power-count instance with base 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommitObserveBound {
    pub k: u32,
    pub theta: u32,
    pub delta: u32,
    /// Options with value at least `theta + delta`.
    #[serde(serialize_with = "as_string")]
    pub good: BigInt,
    /// Options with value in `theta+1 ..= theta+delta-1`.
    #[serde(serialize_with = "as_string")]
    pub bad: BigInt,
    #[serde(serialize_with = "as_string")]
    pub bound: BigRational,
    #[serde(serialize_with = "as_string")]
    pub cap: BigRational,
}

fn as_string<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn check_commit_observe_args(k: u32, theta: u32, delta: u32) -> Result<()> {
    if k == 0 || delta == 0 || delta > k || theta > k - delta {
        return Err(Error::domain(format!(
            "need 1 <= delta <= k and 0 <= theta <= k - delta, got k={k}, theta={theta}, delta={delta}"
        )));
    }
    Ok(())
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

/// `G / (B + G)` with `G = sum_{j=theta+delta}^{k} 2^(k-j)` and
/// `B = sum_{j=theta+1}^{theta+delta-1} 2^(k-j)`, checked against `4 * 2^-delta`.
pub fn commit_observe_bound(k: u32, theta: u32, delta: u32) -> Result<CommitObserveBound> {
    check_commit_observe_args(k, theta, delta)?;
    let good: BigInt = (theta + delta..=k).map(|j| pow2(k - j)).sum();
    let bad: BigInt = (theta + 1..theta + delta).map(|j| pow2(k - j)).sum();
    let bound = BigRational::new(good.clone(), &good + &bad);
    let cap = ratio(4, pow2(delta));
    if bound > cap {
        return Err(Error::Assertion(format!(
            "G/(B+G) = {bound} exceeds 4*2^-{delta}"
        )));
    }
    Ok(CommitObserveBound {
        k,
        theta,
        delta,
        good,
        bad,
        bound,
        cap,
    })
}

/// Optimal probability of accepting a good option when each option is either tested
/// at the fixed threshold and accepted on pass (commit) or observed and rejected.
///
/// `table[f][b][g]` is the value with `f` failing, `b` bad and `g` good options left
/// in uniformly random order. Only the class of each remaining value matters under
/// these two actions, so the table is the per-level dynamic program lumped by class.
#[derive(Debug, Clone)]
pub struct CommitObserveTable {
    dims: (usize, usize, usize),
    values: Vec<BigRational>,
}

impl CommitObserveTable {
    pub fn new(fail: usize, bad: usize, good: usize) -> CommitObserveTable {
        let dims = (fail + 1, bad + 1, good + 1);
        let mut values = vec![BigRational::zero(); dims.0 * dims.1 * dims.2];
        let at = |f: usize, b: usize, g: usize| (f * dims.1 + b) * dims.2 + g;
        for f in 0..=fail {
            for b in 0..=bad {
                for g in 0..=good {
                    let t = f + b + g;
                    if t == 0 {
                        continue;
                    }
                    let pf = ratio(f as i64, t as i64);
                    let pb = ratio(b as i64, t as i64);
                    let pg = ratio(g as i64, t as i64);
                    let after_fail = if f > 0 {
                        &pf * &values[at(f - 1, b, g)]
                    } else {
                        BigRational::zero()
                    };
                    let commit = &after_fail + &pg;
                    let mut observe = after_fail;
                    if g > 0 {
                        observe += &pg * &values[at(f, b, g - 1)];
                    }
                    if b > 0 {
                        observe += &pb * &values[at(f, b - 1, g)];
                    }
                    values[at(f, b, g)] = commit.max(observe);
                }
            }
        }
        CommitObserveTable { dims, values }
    }

    pub fn value(&self, fail: usize, bad: usize, good: usize) -> &BigRational {
        let (_, d1, d2) = self.dims;
        &self.values[(fail * d1 + bad) * d2 + good]
    }
}

/// The commit/observe optimum on the power-count instance, checked against `G/(B+G)`.
pub fn commit_observe_optimum(k: u32, theta: u32, delta: u32) -> Result<BigRational> {
    check_commit_observe_args(k, theta, delta)?;
    if k > COMMIT_DP_MAX_K {
        return Err(Error::Resource(format!(
            "commit/observe table limited to k <= {COMMIT_DP_MAX_K}, got {k}"
        )));
    }
    let count = |lo: u32, hi: u32| -> usize { (lo..=hi).map(|j| 1usize << (k - j)).sum() };
    let fail = count(0, theta);
    let bad = if delta > 1 {
        count(theta + 1, theta + delta - 1)
    } else {
        0
    };
    let good = count(theta + delta, k);
    let table = CommitObserveTable::new(fail, bad, good);
    let value = table.value(fail, bad, good).clone();
    let closed = commit_observe_bound(k, theta, delta)?.bound;
    if value != closed {
        return Err(Error::Assertion(format!(
            "commit/observe optimum {value} differs from G/(B+G) = {closed}"
        )));
    }
    Ok(value)
}

/// Exact optimal expected score of a full-information player facing the integer
/// values `values` in uniformly random order.
///
/// Before rejecting, the player may test at infinity for free and learn the value, so
/// the remaining multiset is always known. Within a step the state is the cumulative
/// threshold already passed; tests at integer levels suffice.
pub fn optimal_online_dp(values: &[u32]) -> Result<BigRational> {
    if values.is_empty() {
        return Err(Error::validation("empty instance"));
    }
    if values.len() > ONLINE_DP_MAX_OPTIONS {
        return Err(Error::Resource(format!(
            "online optimum limited to {ONLINE_DP_MAX_OPTIONS} options, got {}",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|&&v| v > ONLINE_DP_MAX_VALUE) {
        return Err(Error::Resource(format!(
            "online optimum limited to values <= {ONLINE_DP_MAX_VALUE}, got {v}"
        )));
    }
    let mut counts = vec![0u8; ONLINE_DP_MAX_VALUE as usize + 1];
    for &v in values {
        counts[v as usize] += 1;
    }
    let mut memo = HashMap::new();
    Ok(online_value(&counts, &mut memo))
}

fn online_value(counts: &[u8], memo: &mut HashMap<Vec<u8>, BigRational>) -> BigRational {
    if counts.iter().all(|&c| c == 0) {
        return BigRational::zero();
    }
    if let Some(v) = memo.get(counts) {
        return v.clone();
    }
    // Value of continuing after the arriving value `v` is observed and rejected.
    let after: Vec<BigRational> = (0..counts.len())
        .map(|v| {
            if counts[v] == 0 {
                return BigRational::zero();
            }
            let mut rest = counts.to_vec();
            rest[v] -= 1;
            online_value(&rest, memo)
        })
        .collect();
    let top = counts.iter().rposition(|&c| c > 0).expect("nonempty");
    // step[c + 1]: best value given the arriving value exceeds c with c already spent;
    // step[0]: nothing tested yet.
    let mut step = vec![BigRational::zero(); top + 2];
    for lo in (0..=top + 1).rev() {
        // Values still possible: v >= lo, with spend lo - 1 when lo > 0.
        let mass: u64 = (lo..=top).map(|v| counts[v] as u64).sum();
        if mass == 0 {
            continue;
        }
        let spent = lo.saturating_sub(1);
        let prob = |v: usize| ratio(counts[v] as i64, mass as i64);
        let accept: BigRational = (lo..=top)
            .map(|v| prob(v) * ratio((v - spent) as i64, 1))
            .sum();
        let reject: BigRational = (lo..=top).map(|v| prob(v) * &after[v]).sum();
        let mut best = accept.max(reject);
        // Test at cumulative level c >= spent (strictly above when already tested).
        let first = if lo == 0 { 0 } else { lo };
        for c in first..top {
            let fail: BigRational = (lo..=c).map(|v| prob(v) * &after[v]).sum();
            let pass_mass: u64 = (c + 1..=top).map(|v| counts[v] as u64).sum();
            let cont = ratio(pass_mass as i64, mass as i64) * &step[c + 1];
            best = best.max(fail + cont);
        }
        step[lo] = best;
    }
    let value = step[0].clone();
    memo.insert(counts.to_vec(), value.clone());
    value
}

/// Conditional probability that the next value is `theta + delta` when only the levels
/// `theta + 1` and `theta + delta` remain: `1 / (2^(delta-1) + 1)`.
pub fn two_level_conditional(delta: u32) -> Result<BigRational> {
    if delta == 0 {
        return Err(Error::domain("delta must be at least 1"));
    }
    Ok(ratio(1, pow2(delta - 1) + BigInt::one()))
}

/// Pooled estimate of `P[next = theta + delta | theta + 1 still unseen]`.
#[derive(Debug, Clone, Serialize)]
pub struct RiskyWinReport {
    pub k: u32,
    pub theta: u32,
    pub delta: u32,
    pub trials: usize,
    pub events: u64,
    pub estimate: f64,
    pub se: f64,
    pub bound: f64,
    pub passed: bool,
}

/// Monte Carlo probe on the geometric-order generator: at every position where level
/// `theta + 1` is still among the unseen values, record whether the arriving value is
/// `theta + delta`. Passes when the pooled rate is at most `2^(1-delta)` plus 3
/// cluster standard errors.
pub fn risky_win_probability_check(
    k: u32,
    theta: u32,
    delta: u32,
    trials: usize,
    seed: u64,
) -> Result<RiskyWinReport> {
    check_commit_observe_args(k, theta, delta)?;
    if trials < 2 {
        return Err(Error::validation("need at least 2 trials"));
    }
    let risky = (theta + 1) as f64;
    let target = (theta + delta) as f64;
    let per_trial: Vec<(u64, u64)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<(u64, u64)> {
            let values = nonuniform_geometric_order(k, &mut trial_rng(seed, t))?.values;
            let last = values.iter().rposition(|&v| v == risky).unwrap_or(0);
            let hits = values[..=last].iter().filter(|&&v| v == target).count() as u64;
            Ok((last as u64 + 1, hits))
        })
        .collect::<Result<_>>()?;
    let events: u64 = per_trial.iter().map(|p| p.0).sum();
    let hits: u64 = per_trial.iter().map(|p| p.1).sum();
    let p = hits as f64 / events as f64;
    let resid: f64 = per_trial
        .iter()
        .map(|&(x, y)| (y as f64 - p * x as f64).powi(2))
        .sum();
    let tn = trials as f64;
    let se = (resid * tn / (tn - 1.0)).sqrt() / events as f64;
    let bound = 0.5f64.powi(delta as i32 - 1);
    Ok(RiskyWinReport {
        k,
        theta,
        delta,
        trials,
        events,
        estimate: p,
        se,
        bound,
        passed: p <= bound + 3.0 * se,
    })
}

/// Frequency with which the last `theta + delta` arrives after the last `theta + 1`.
#[derive(Debug, Clone, Serialize)]
pub struct SafeWinReport {
    pub k: u32,
    pub theta: u32,
    pub delta: u32,
    pub trials: usize,
    pub frequency: f64,
    pub se: f64,
    /// `exp(-2^(k-theta)/32)`.
    pub chernoff: f64,
}

pub fn safe_win_event_probability(
    k: u32,
    theta: u32,
    delta: u32,
    trials: usize,
    seed: u64,
) -> Result<SafeWinReport> {
    check_commit_observe_args(k, theta, delta)?;
    let risky = (theta + 1) as f64;
    let target = (theta + delta) as f64;
    let flags: Vec<bool> = (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<bool> {
            let values = nonuniform_geometric_order(k, &mut trial_rng(seed, t))?.values;
            let last_bad = values.iter().rposition(|&v| v == risky);
            let last_good = values.iter().rposition(|&v| v == target);
            Ok(last_good > last_bad)
        })
        .collect::<Result<_>>()?;
    let m = MeanSe::of_bools(flags);
    Ok(SafeWinReport {
        k,
        theta,
        delta,
        trials,
        frequency: m.mean,
        se: m.se,
        chernoff: (-(2f64.powi((k - theta) as i32)) / 32.0).exp(),
    })
}

/// Lossy conversion for reports.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop_assert, proptest};

    fn q(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    #[test]
    fn harmonic_small() {
        assert_eq!(harmonic(1).unwrap(), q(1, 1));
        assert_eq!(harmonic(2).unwrap(), q(3, 2));
        assert_eq!(harmonic(4).unwrap(), q(25, 12));
        assert!(harmonic(0).is_err());
        assert!(harmonic(HARMONIC_EXACT_LIMIT + 1).is_err());
    }

    #[test]
    fn harmonic_reference_values() {
        assert!((harmonic_f64(100).unwrap() - 5.187_377_517_639_621).abs() < 1e-12);
        assert!((harmonic_f64(10_000).unwrap() - 9.787_606_036_044_348).abs() < 1e-12);
        assert!((harmonic_f64(1024).unwrap() - 7.509).abs() < 1e-3);
    }

    #[test]
    fn harmonic_float_matches_exact() {
        for n in [1usize, 7, 100, 1000, 10_000] {
            let exact = to_f64(&harmonic(n).unwrap());
            assert!((harmonic_f64(n).unwrap() - exact).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn harmonic_float_matches_asymptotics_up_to_a_million() {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        for n in [20_000usize, 100_000, 1_000_000] {
            let nf = n as f64;
            let series = nf.ln() + EULER_GAMMA + 1.0 / (2.0 * nf) - 1.0 / (12.0 * nf * nf);
            assert!((harmonic_f64(n).unwrap() - series).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn expected_max_small() {
        let c = expected_max_exponential_check(10, 10_000, 1).unwrap();
        assert!(c.passed, "{c:?}");
        assert!(expected_max_exponential_check(10, 100, 1).is_err());
    }

    #[test]
    fn commit_observe_examples() {
        let b = commit_observe_bound(3, 0, 2).unwrap();
        assert_eq!(
            (b.good.clone(), b.bad.clone()),
            (BigInt::from(3), BigInt::from(4))
        );
        assert_eq!(b.bound, q(3, 7));
        assert_eq!(b.cap, q(1, 1));
        let b = commit_observe_bound(3, 1, 2).unwrap();
        assert_eq!(
            (b.good.clone(), b.bad.clone()),
            (BigInt::from(1), BigInt::from(2))
        );
        assert_eq!(b.bound, q(1, 3));
        for k in 1..=10u32 {
            let b = commit_observe_bound(k, 0, k).unwrap();
            assert_eq!(b.bound, ratio(1, pow2(k) - 1));
        }
        assert!(commit_observe_bound(3, 2, 2).is_err());
        assert!(commit_observe_bound(3, 0, 0).is_err());
        assert!(commit_observe_bound(3, 0, 4).is_err());
    }

    #[test]
    fn commit_dp_matches_closed_form() {
        assert_eq!(commit_observe_optimum(3, 0, 2).unwrap(), q(3, 7));
        for k in 1..=4u32 {
            for delta in 1..=k {
                for theta in 0..=k - delta {
                    commit_observe_optimum(k, theta, delta).unwrap();
                }
            }
        }
        assert!(commit_observe_optimum(7, 0, 2).is_err());
    }

    #[test]
    fn commit_dp_edge_states() {
        let t = CommitObserveTable::new(3, 2, 2);
        for f in 0..=3 {
            assert_eq!(t.value(f, 0, 2), &q(1, 1));
            assert_eq!(t.value(f, 2, 0), &q(0, 1));
        }
    }

    /// Per-level dynamic program over the full remaining multiset, to cross-check the
    /// class-lumped table.
    fn per_level(
        counts: &mut Vec<u8>,
        theta: usize,
        delta: usize,
        memo: &mut HashMap<Vec<u8>, BigRational>,
    ) -> BigRational {
        let t: u64 = counts.iter().map(|&c| c as u64).sum();
        if t == 0 {
            return BigRational::zero();
        }
        if let Some(v) = memo.get(counts.as_slice()) {
            return v.clone();
        }
        let mut commit = BigRational::zero();
        let mut observe = BigRational::zero();
        for v in 0..counts.len() {
            if counts[v] == 0 {
                continue;
            }
            let p = ratio(counts[v] as i64, t as i64);
            counts[v] -= 1;
            let rest = per_level(counts, theta, delta, memo);
            counts[v] += 1;
            if v <= theta {
                commit += &p * &rest;
            } else if v >= theta + delta {
                commit += &p;
            }
            observe += p * rest;
        }
        let best = commit.max(observe);
        memo.insert(counts.clone(), best.clone());
        best
    }

    #[test]
    fn lumped_table_matches_per_level_program() {
        for k in 1..=3u32 {
            for delta in 1..=k {
                for theta in 0..=k - delta {
                    let mut counts: Vec<u8> = (0..=k).map(|j| 1u8 << (k - j)).collect();
                    let full = per_level(
                        &mut counts,
                        theta as usize,
                        delta as usize,
                        &mut HashMap::new(),
                    );
                    assert_eq!(full, commit_observe_optimum(k, theta, delta).unwrap());
                }
            }
        }
    }

    #[test]
    fn online_dp_hand_values() {
        assert_eq!(optimal_online_dp(&[0, 2]).unwrap(), q(2, 1));
        assert_eq!(optimal_online_dp(&[1, 2]).unwrap(), q(3, 2));
        for c in 0..=5 {
            assert_eq!(optimal_online_dp(&[c]).unwrap(), q(c as i64, 1));
        }
        assert_eq!(optimal_online_dp(&[0, 0]).unwrap(), q(0, 1));
        assert!(optimal_online_dp(&[]).is_err());
        assert!(optimal_online_dp(&[6]).is_err());
        assert!(optimal_online_dp(&[1; 9]).is_err());
    }

    #[test]
    fn online_dp_equal_values() {
        // All equal: accept the first untested.
        assert_eq!(optimal_online_dp(&[3, 3, 3]).unwrap(), q(3, 1));
    }

    proptest! {
        #[test]
        fn online_dp_monotone_in_extra_maximum(values in proptest::collection::vec(0u32..=5, 1..=7)) {
            let base = optimal_online_dp(&values).unwrap();
            let top = *values.iter().max().unwrap();
            let mut more = values.clone();
            more.push(top);
            prop_assert!(optimal_online_dp(&more).unwrap() >= base);
        }

        #[test]
        fn online_dp_is_between_mean_and_max(values in proptest::collection::vec(0u32..=5, 1..=6)) {
            let v = optimal_online_dp(&values).unwrap();
            let sum: u32 = values.iter().sum();
            prop_assert!(v >= ratio(sum as i64, values.len() as i64));
            prop_assert!(v <= ratio(*values.iter().max().unwrap() as i64, 1));
        }
    }

    #[test]
    fn two_level_values() {
        assert_eq!(two_level_conditional(3).unwrap(), q(1, 5));
        for d in 1..=20u32 {
            let c = two_level_conditional(d).unwrap();
            assert!(c <= ratio(2, pow2(d)));
            let direct = ratio(1, pow2(d)) / (q(1, 2) + ratio(1, pow2(d)));
            assert_eq!(c, direct);
        }
    }

    #[test]
    fn risky_win_small() {
        let r = risky_win_probability_check(6, 0, 3, 50, 3).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.events > 0);
    }

    #[test]
    fn safe_win_is_rare() {
        let r = safe_win_event_probability(6, 0, 3, 200, 5).unwrap();
        assert!(r.frequency <= r.chernoff + 3.0 * r.se + 1e-12, "{r:?}");
    }
}
