//! The unknown-length bit sampling game.
//!
//! An oblivious adversary fixes a binary sequence of unknown length in which ones are a
//! strict majority. The player sees the bits one at a time and may commit to the next
//! unseen bit at any point; it wins iff that bit is a one.
//!
//! [`BitSampler`] commits before each bit with probability `2^-(delta+2)`, clamped to 1,
//! where `delta` is zeros minus ones seen so far. It wins with probability at least 1/6
//! on every valid sequence; [`min_win_prob_exhaustive`] checks this exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::Serialize;

use crate::error::{Error, Result};

/// Longest sequence evaluated in exact arithmetic.
pub const EXACT_LIMIT: usize = 10_000;

/// Longest length accepted by the exhaustive search.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// `2^-(delta+2)`, clamped to 1 for `delta <= -2`.
pub fn commit_probability(delta: i64) -> f64 {
    if delta <= -2 {
        1.0
    } else {
        0.5f64.powi((delta + 2) as i32)
    }
}

/// Exact version of [`commit_probability`].
pub fn commit_probability_exact(delta: i64) -> BigRational {
    if delta <= -2 {
        BigRational::one()
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (delta + 2) as usize)
    }
}

/// `(1/3)(1 - 2^-(delta+1))`, the guaranteed continuation value at `delta >= 0`.
pub fn inductive_bound(delta: i64) -> Result<f64> {
    if delta < 0 {
        return Err(Error::domain(format!(
            "delta must be nonnegative, got {delta}"
        )));
    }
    Ok((1.0 - 0.5f64.powi((delta + 1) as i32)) / 3.0)
}

pub fn inductive_bound_exact(delta: i64) -> Result<BigRational> {
    if delta < 0 {
        return Err(Error::domain(format!(
            "delta must be nonnegative, got {delta}"
        )));
    }
    let half_pow = BigRational::new(BigInt::one(), BigInt::one() << (delta + 1) as usize);
    Ok((BigRational::one() - half_pow) / BigRational::from_integer(BigInt::from(3)))
}

/// A nonempty bit string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSequence {
    bits: Vec<bool>,
}

impl BitSequence {
    /// A sequence with a strict majority of ones.
    pub fn new(bits: Vec<bool>) -> Result<BitSequence> {
        let seq = BitSequence { bits };
        if !seq.is_valid() {
            return Err(Error::validation(format!(
                "sequence {seq} needs a strict majority of ones"
            )));
        }
        Ok(seq)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_valid(&self) -> bool {
        !self.bits.is_empty() && 2 * self.ones() > self.bits.len()
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<BitSequence> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::validation(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        BitSequence::new(bits)
    }
}

impl Serialize for BitSequence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The player's state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BitSampler {
    /// Zeros minus ones observed so far.
    pub delta: i64,
    pub committed: bool,
}

impl BitSampler {
    pub fn new() -> BitSampler {
        BitSampler::default()
    }

    /// Decide whether to commit to the next bit.
    pub fn decide(&mut self, rng: &mut dyn RngCore) -> bool {
        if self.committed {
            return true;
        }
        let p = commit_probability(self.delta);
        self.committed = p >= 1.0 || rng.random::<f64>() < p;
        self.committed
    }

    /// Record an observed (not committed) bit.
    pub fn observe(&mut self, bit: bool) {
        self.delta += if bit { -1 } else { 1 };
    }
}

/// Play the sampler against `seq`; true on a win.
pub fn play_game(seq: &BitSequence, rng: &mut dyn RngCore) -> Result<bool> {
    if !seq.is_valid() {
        return Err(Error::validation(format!("invalid sequence {seq}")));
    }
    let mut player = BitSampler::new();
    for &bit in seq.bits() {
        if player.decide(rng) {
            return Ok(bit);
        }
        player.observe(bit);
    }
    Ok(false)
}

/// Win probability of a commit rule, in exact arithmetic.
pub fn exact_win_prob_with(
    seq: &BitSequence,
    rule: &dyn Fn(i64) -> BigRational,
) -> Result<BigRational> {
    if !seq.is_valid() {
        return Err(Error::validation(format!("invalid sequence {seq}")));
    }
    if seq.len() > EXACT_LIMIT {
        return Err(Error::Resource(format!(
            "exact evaluation is limited to {EXACT_LIMIT} bits"
        )));
    }
    let mut win = BigRational::zero();
    let mut alive = BigRational::one();
    let mut delta = 0i64;
    for &bit in seq.bits() {
        let p = rule(delta);
        if bit {
            win += &alive * &p;
            delta -= 1;
        } else {
            delta += 1;
        }
        alive *= BigRational::one() - p;
        if alive.is_zero() {
            break;
        }
    }
    Ok(win)
}

/// Exact win probability of the sampler.
pub fn exact_win_prob(seq: &BitSequence) -> Result<BigRational> {
    exact_win_prob_with(seq, &commit_probability_exact)
}

/// Win probability in floating point; usable beyond [`EXACT_LIMIT`].
pub fn win_prob_f64(seq: &BitSequence) -> Result<f64> {
    if !seq.is_valid() {
        return Err(Error::validation(format!("invalid sequence {seq}")));
    }
    let mut win = 0.0;
    let mut alive = 1.0;
    let mut delta = 0i64;
    for &bit in seq.bits() {
        let p = commit_probability(delta);
        if bit {
            win += alive * p;
            delta -= 1;
        } else {
            delta += 1;
        }
        alive *= 1.0 - p;
    }
    Ok(win)
}

/// Exact when the sequence is short enough, floating point otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum WinProbability {
    Exact(BigRational),
    Approximate(f64),
}

impl WinProbability {
    pub fn to_f64(&self) -> f64 {
        match self {
            WinProbability::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            WinProbability::Approximate(x) => *x,
        }
    }
}

pub fn win_probability(seq: &BitSequence) -> Result<WinProbability> {
    if seq.len() <= EXACT_LIMIT {
        exact_win_prob(seq).map(WinProbability::Exact)
    } else {
        win_prob_f64(seq).map(WinProbability::Approximate)
    }
}

/// Minimum win probability over all valid sequences up to a length, with a witness.
#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustiveMinimum {
    pub minimum: BigRational,
    pub witness: BitSequence,
    pub sequences: u64,
}

/// Exhaustive minimum of the sampler's win probability over valid sequences of
/// length at most `max_len`.
pub fn min_win_prob_exhaustive(max_len: usize) -> Result<ExhaustiveMinimum> {
    min_win_prob_exhaustive_with(max_len, &commit_probability_exact)
}

/// [`min_win_prob_exhaustive`] for an arbitrary commit rule.
pub fn min_win_prob_exhaustive_with(
    max_len: usize,
    rule: &dyn Fn(i64) -> BigRational,
) -> Result<ExhaustiveMinimum> {
    if max_len == 0 || max_len > EXHAUSTIVE_LIMIT {
        return Err(Error::domain(format!(
            "max length must lie in 1..={EXHAUSTIVE_LIMIT}, got {max_len}"
        )));
    }
    // Every prefix of a sequence is itself a sequence, so one depth-first pass over
    // prefixes covers all lengths.
    struct Search<'a> {
        rule: &'a dyn Fn(i64) -> BigRational,
        max_len: usize,
        bits: Vec<bool>,
        best: Option<(BigRational, Vec<bool>)>,
        sequences: u64,
    }

    impl Search<'_> {
        fn visit(&mut self, delta: i64, win: &BigRational, alive: &BigRational) {
            if !self.bits.is_empty() && delta < 0 {
                self.sequences += 1;
                if self.best.as_ref().is_none_or(|(b, _)| win < b) {
                    self.best = Some((win.clone(), self.bits.clone()));
                }
            }
            if self.bits.len() == self.max_len {
                return;
            }
            let p = (self.rule)(delta);
            let next_alive = alive * (BigRational::one() - &p);
            self.bits.push(false);
            self.visit(delta + 1, win, &next_alive);
            self.bits.pop();
            self.bits.push(true);
            let next_win = win + alive * &p;
            self.visit(delta - 1, &next_win, &next_alive);
            self.bits.pop();
        }
    }

    let mut search = Search {
        rule,
        max_len,
        bits: Vec::with_capacity(max_len),
        best: None,
        sequences: 0,
    };
    search.visit(0, &BigRational::zero(), &BigRational::one());
    let (minimum, bits) = search
        .best
        .expect("length-1 sequence \"1\" is always valid");
    Ok(ExhaustiveMinimum {
        minimum,
        witness: BitSequence { bits },
        sequences: search.sequences,
    })
}

/// A prefix state where the continuation value fell below the inductive bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SuffixViolation {
    pub sequence: BitSequence,
    pub position: usize,
    pub delta: i64,
    pub continuation: BigRational,
}

/// Summary of the suffix-state check.
#[derive(Debug, Clone, PartialEq)]
pub struct SuffixCheck {
    pub states_checked: u64,
    pub violations: Vec<SuffixViolation>,
    /// Smallest `continuation - bound` over all checked states.
    pub min_slack: BigRational,
}

/// For every valid sequence of length at most `max_len` and every position where the
/// observed prefix has `delta >= 0`, compare the exact probability of winning from
/// there on with `(1/3)(1 - 2^-(delta+1))`.
pub fn check_suffix_bound(max_len: usize) -> Result<SuffixCheck> {
    if max_len == 0 || max_len > EXHAUSTIVE_LIMIT {
        return Err(Error::domain(format!(
            "max length must lie in 1..={EXHAUSTIVE_LIMIT}, got {max_len}"
        )));
    }
    let max_delta = max_len as i64 + 2;
    let probs: Vec<BigRational> = (-max_delta..=max_delta)
        .map(commit_probability_exact)
        .collect();
    let p_of = |d: i64| &probs[(d + max_delta) as usize];
    let bounds: Vec<BigRational> = (0..=max_delta)
        .map(|d| inductive_bound_exact(d).unwrap())
        .collect();

    let mut out = SuffixCheck {
        states_checked: 0,
        violations: Vec::new(),
        min_slack: BigRational::one(),
    };
    let mut deltas = vec![0i64; max_len + 1];
    let mut values = vec![BigRational::zero(); max_len + 1];
    for len in 1..=max_len {
        for mask in 0u32..(1u32 << len) {
            let ones = mask.count_ones() as usize;
            if 2 * ones <= len {
                continue;
            }
            let bit = |i: usize| (mask >> (len - 1 - i)) & 1 == 1;
            for i in 0..len {
                deltas[i + 1] = deltas[i] + if bit(i) { -1 } else { 1 };
            }
            values[len] = BigRational::zero();
            for i in (0..len).rev() {
                let p = p_of(deltas[i]);
                let keep = (BigRational::one() - p) * &values[i + 1];
                values[i] = if bit(i) { p + keep } else { keep };
            }
            for i in 0..len {
                let d = deltas[i];
                if d < 0 {
                    continue;
                }
                out.states_checked += 1;
                let slack = &values[i] - &bounds[d as usize];
                if slack < out.min_slack {
                    out.min_slack = slack.clone();
                }
                if slack < BigRational::zero() {
                    out.violations.push(SuffixViolation {
                        sequence: BitSequence {
                            bits: (0..len).map(bit).collect(),
                        },
                        position: i,
                        delta: d,
                        continuation: values[i].clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Guess-the-length baseline: pick `g` uniformly from the powers of two up to
/// `max_len`, then commit to a uniformly random one of the first `g` positions.
/// Positions beyond the end of the sequence lose.
pub fn naive_win_prob(seq: &BitSequence, max_len: usize) -> Result<BigRational> {
    if !seq.is_valid() {
        return Err(Error::validation(format!("invalid sequence {seq}")));
    }
    if max_len < seq.len() {
        return Err(Error::domain("max length shorter than the sequence"));
    }
    let guesses: Vec<usize> = (0..usize::BITS)
        .map(|e| 1usize << e)
        .take_while(|&g| g <= max_len)
        .collect();
    let mut total = BigRational::zero();
    for &g in &guesses {
        let ones = seq.bits()[..g.min(seq.len())]
            .iter()
            .filter(|&&b| b)
            .count();
        total += BigRational::new(BigInt::from(ones), BigInt::from(g));
    }
    Ok(total / BigRational::from_integer(BigInt::from(guesses.len())))
}

/// Minimum of [`naive_win_prob`] over valid sequences of length at most `max_len`.
pub fn naive_min_win_prob(max_len: usize) -> Result<(BigRational, BitSequence)> {
    if max_len == 0 || max_len > EXHAUSTIVE_LIMIT {
        return Err(Error::domain(format!(
            "max length must lie in 1..={EXHAUSTIVE_LIMIT}, got {max_len}"
        )));
    }
    let mut best: Option<(BigRational, BitSequence)> = None;
    for len in 1..=max_len {
        for mask in 0u32..(1u32 << len) {
            if 2 * mask.count_ones() as usize <= len {
                continue;
            }
            let seq = BitSequence {
                bits: (0..len).map(|i| (mask >> (len - 1 - i)) & 1 == 1).collect(),
            };
            let p = naive_win_prob(&seq, max_len)?;
            if best.as_ref().is_none_or(|(b, _)| p < *b) {
                best = Some((p, seq));
            }
        }
    }
    Ok(best.expect("nonempty search"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn seq(s: &str) -> BitSequence {
        s.parse().unwrap()
    }

    #[test]
    fn commit_probabilities() {
        assert_eq!(commit_probability(0), 0.25);
        assert_eq!(commit_probability(2), 1.0 / 16.0);
        assert_eq!(commit_probability(-1), 0.5);
        assert_eq!(commit_probability(-2), 1.0);
        assert_eq!(commit_probability(-7), 1.0);
        assert_eq!(commit_probability_exact(0), q(1, 4));
        assert_eq!(commit_probability_exact(-3), q(1, 1));
    }

    #[test]
    fn inductive_bounds() {
        assert_eq!(inductive_bound(0).unwrap(), 1.0 / 6.0);
        assert_eq!(inductive_bound(1).unwrap(), 0.25);
        assert_eq!(inductive_bound_exact(0).unwrap(), q(1, 6));
        assert!(matches!(inductive_bound(-1), Err(Error::Domain(_))));
        let mut prev = 0.0;
        for d in 0..60 {
            let b = inductive_bound(d).unwrap();
            assert!(b > prev || d > 50);
            assert!(b <= 1.0 / 3.0);
            prev = b;
        }
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_win_prob(&seq("1")).unwrap(), q(1, 4));
        assert_eq!(exact_win_prob(&seq("11")).unwrap(), q(5, 8));
        assert_eq!(exact_win_prob(&seq("011")).unwrap(), q(33, 128));
        assert!(BitSequence::new(vec![true, false]).is_err());
        assert!("2".parse::<BitSequence>().is_err());
    }

    #[test]
    fn exhaustive_small_cases() {
        let m1 = min_win_prob_exhaustive(1).unwrap();
        assert_eq!(m1.minimum, q(1, 4));
        assert_eq!(m1.witness.to_string(), "1");
        let m3 = min_win_prob_exhaustive(3).unwrap();
        let by_hand = ["1", "11", "011", "101", "110", "111"]
            .iter()
            .map(|s| exact_win_prob(&seq(s)).unwrap())
            .min()
            .unwrap();
        assert_eq!(m3.minimum, by_hand);
        assert_eq!(m3.sequences, 6);
        assert!(m3.minimum >= q(1, 6));
    }

    #[test]
    fn exhaustive_minimum_through_twelve() {
        let m = min_win_prob_exhaustive(12).unwrap();
        assert!(m.minimum >= q(1, 6));
        assert_eq!(exact_win_prob(&m.witness).unwrap(), m.minimum);
    }

    #[test]
    fn weaker_commit_rule_breaks_the_bound() {
        let weak = |d: i64| {
            if d <= -3 {
                BigRational::one()
            } else {
                BigRational::new(BigInt::one(), BigInt::one() << (d + 3) as usize)
            }
        };
        let m = min_win_prob_exhaustive_with(14, &weak).unwrap();
        assert!(m.minimum < q(1, 6));
    }

    #[test]
    fn suffix_bound_small() {
        let check = check_suffix_bound(10).unwrap();
        assert!(check.violations.is_empty());
        assert!(check.states_checked > 0);
        assert!(check.min_slack >= BigRational::zero());
    }

    #[test]
    fn float_and_exact_agree() {
        for s in ["1", "011", "0011101", "000111111", "1010101011"] {
            let e = exact_win_prob(&seq(s)).unwrap().to_f64().unwrap();
            assert!((e - win_prob_f64(&seq(s)).unwrap()).abs() < 1e-15);
        }
        let long = BitSequence::new(vec![true; EXACT_LIMIT + 1]).unwrap();
        assert!(matches!(
            win_probability(&long).unwrap(),
            WinProbability::Approximate(_)
        ));
    }

    #[test]
    fn simulation_matches_exact() {
        let mut rng = seeded(21);
        for s in ["1", "011", "0011101", "000111111"] {
            let sq = seq(s);
            let p = exact_win_prob(&sq).unwrap().to_f64().unwrap();
            let trials = 100_000;
            let wins = (0..trials)
                .filter(|_| play_game(&sq, &mut rng).unwrap())
                .count();
            let hat = wins as f64 / trials as f64;
            let se = (p * (1.0 - p) / trials as f64).sqrt();
            assert!((hat - p).abs() <= 4.0 * se, "{s}: {hat} vs {p}");
        }
    }

    #[test]
    fn naive_baseline() {
        let s = seq("0000001111111");
        assert_eq!(naive_win_prob(&s, 14).unwrap(), q(1, 16));
        let (min, _) = naive_min_win_prob(14).unwrap();
        assert!(min <= q(1, 6));
        assert!(min_win_prob_exhaustive(14).unwrap().minimum >= q(1, 6));
    }
}
