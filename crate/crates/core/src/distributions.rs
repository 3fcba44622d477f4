//! Nonnegative laws with sampling, survival functions and upper quantiles.
//!
//! The upper quantile at level `alpha` is the smallest `tau` with `P(X > tau) <= alpha`.
//! For atomless laws this is the usual `tau` with `P(X > tau) = alpha`; at `alpha = 1`
//! it is the essential infimum.
//!
//! Laws can be written in a small text format:
//!
//! ```text
//! law    := exp(r) | truncexp(c) | uniform(a, b) | degenerate(v)
//!         | discrete(v:w, v:w, ...) | empirical(x, x, ...) | smoothed(law, eps)
//! ```
//!
//! Whitespace is ignored between tokens; numbers use Rust float syntax.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore};
use rand_distr::{Distribution as _, Exp1};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative width of the default continuity perturbation.
pub const DEFAULT_SMOOTHING: f64 = 1e-9;

/// Guaranteed absolute accuracy of max-law quantiles; bisection actually runs to float
/// resolution.
pub const MAX_LAW_TOLERANCE: f64 = 1e-9;

const MAX_BISECTION_STEPS: usize = 2200;

/// A sampleable nonnegative law with a survival function and upper quantiles.
pub trait Distribution {
    fn sample(&self, rng: &mut dyn RngCore) -> f64;
    /// `P(X > x)`.
    fn survival(&self, x: f64) -> f64;
    /// Smallest `tau` with `P(X > tau) <= alpha`, for `alpha` in `(0, 1]`.
    fn upper_quantile(&self, alpha: f64) -> Result<f64>;
    /// `E[X]`, if declared.
    fn mean(&self) -> Option<f64>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Discrete {
    values: Vec<f64>,
    probs: Vec<f64>,
    /// `tail[i] = P(X > values[i])`.
    tail: Vec<f64>,
    cumulative: Vec<f64>,
}

impl Discrete {
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::validation("discrete law needs at least one point"));
        }
        for &(v, w) in points {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::validation(format!(
                    "discrete values must be finite and nonnegative, got {v}"
                )));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::validation(format!(
                    "discrete weights must be finite and positive, got {w}"
                )));
            }
        }
        let mut sorted = points.to_vec();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut values: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut weights: Vec<f64> = Vec::with_capacity(sorted.len());
        for (v, w) in sorted {
            if values.last() == Some(&v) {
                *weights.last_mut().unwrap() += w;
            } else {
                values.push(v);
                weights.push(w);
            }
        }
        let total: f64 = weights.iter().sum();
        let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let mut tail = vec![0.0; probs.len()];
        for i in (0..probs.len().saturating_sub(1)).rev() {
            tail[i] = tail[i + 1] + probs[i + 1];
        }
        let mut acc = 0.0;
        let cumulative = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(Discrete {
            values,
            probs,
            tail,
            cumulative,
        })
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().copied().zip(self.probs.iter().copied())
    }

    fn survival(&self, x: f64) -> f64 {
        let idx = self.values.partition_point(|&v| v <= x);
        if idx == 0 {
            1.0
        } else {
            self.tail[idx - 1]
        }
    }

    fn upper_quantile(&self, alpha: f64) -> f64 {
        let idx = self.tail.partition_point(|&t| t > alpha + 1e-12);
        self.values[idx.min(self.values.len() - 1)]
    }

    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let u: f64 = rng.random();
        let idx = self.cumulative.partition_point(|&c| c <= u);
        self.values[idx.min(self.values.len() - 1)]
    }
}

/// The catalog of laws.
#[derive(Debug, Clone, PartialEq)]
pub enum Law {
    Exponential {
        rate: f64,
    },
    /// `min(X, cap)` with `X ~ Exp(1)`; an atom of mass `e^{-cap}` at `cap`.
    TruncatedExponential {
        cap: f64,
    },
    UniformInterval {
        a: f64,
        b: f64,
    },
    Discrete(Discrete),
    Degenerate(f64),
    /// Uniform law over a sorted multiset.
    Empirical(Vec<f64>),
    /// `X + U` with `U ~ Uniform[0, width)` independent of `X`; removes atoms.
    Smoothed {
        base: Box<Law>,
        width: f64,
    },
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha <= 0.0 || alpha > 1.0 {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    Ok(())
}

impl Law {
    pub fn exponential(rate: f64) -> Result<Law> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::validation(format!(
                "rate must be positive, got {rate}"
            )));
        }
        Ok(Law::Exponential { rate })
    }

    pub fn truncated_exponential(cap: f64) -> Result<Law> {
        if !(cap.is_finite() && cap > 0.0) {
            return Err(Error::validation(format!(
                "cap must be positive, got {cap}"
            )));
        }
        Ok(Law::TruncatedExponential { cap })
    }

    pub fn uniform(a: f64, b: f64) -> Result<Law> {
        if !(a.is_finite() && b.is_finite() && a >= 0.0 && a < b) {
            return Err(Error::validation(format!(
                "uniform needs 0 <= a < b, got ({a}, {b})"
            )));
        }
        Ok(Law::UniformInterval { a, b })
    }

    pub fn discrete(points: &[(f64, f64)]) -> Result<Law> {
        Ok(Law::Discrete(Discrete::new(points)?))
    }

    pub fn degenerate(v: f64) -> Result<Law> {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::validation(format!(
                "degenerate value must be finite and nonnegative, got {v}"
            )));
        }
        Ok(Law::Degenerate(v))
    }

    /// Uniform law over the given multiset.
    pub fn empirical(samples: &[f64]) -> Result<Law> {
        if samples.is_empty() {
            return Err(Error::validation("empirical law needs at least one sample"));
        }
        if let Some(bad) = samples.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::validation(format!(
                "samples must be finite and nonnegative, got {bad}"
            )));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Law::Empirical(sorted))
    }

    pub fn smoothed(self, width: f64) -> Result<Law> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::validation(format!(
                "smoothing width must be positive, got {width}"
            )));
        }
        Ok(Law::Smoothed {
            base: Box::new(self),
            width,
        })
    }

    /// True if the law has point masses.
    pub fn has_atoms(&self) -> bool {
        !matches!(
            self,
            Law::Exponential { .. } | Law::UniformInterval { .. } | Law::Smoothed { .. }
        )
    }

    /// Wrap atomic laws with the default perturbation; atomless laws are returned as is.
    pub fn continuous(self) -> Law {
        if !self.has_atoms() {
            return self;
        }
        let scale = self.mean_value().max(self.ess_sup().min(f64::MAX)).max(1.0);
        self.smoothed(DEFAULT_SMOOTHING * scale)
            .expect("positive width")
    }

    pub fn ess_inf(&self) -> f64 {
        match self {
            Law::Exponential { .. } | Law::TruncatedExponential { .. } => 0.0,
            Law::UniformInterval { a, .. } => *a,
            Law::Discrete(d) => d.values[0],
            Law::Degenerate(v) => *v,
            Law::Empirical(s) => s[0],
            Law::Smoothed { base, .. } => base.ess_inf(),
        }
    }

    pub fn ess_sup(&self) -> f64 {
        match self {
            Law::Exponential { .. } => f64::INFINITY,
            Law::TruncatedExponential { cap } => *cap,
            Law::UniformInterval { b, .. } => *b,
            Law::Discrete(d) => *d.values.last().unwrap(),
            Law::Degenerate(v) => *v,
            Law::Empirical(s) => *s.last().unwrap(),
            Law::Smoothed { base, width } => base.ess_sup() + width,
        }
    }

    fn mean_value(&self) -> f64 {
        match self {
            Law::Exponential { rate } => 1.0 / rate,
            Law::TruncatedExponential { cap } => -(-cap).exp_m1(),
            Law::UniformInterval { a, b } => 0.5 * (a + b),
            Law::Discrete(d) => d.points().map(|(v, p)| v * p).sum(),
            Law::Degenerate(v) => *v,
            Law::Empirical(s) => s.iter().sum::<f64>() / s.len() as f64,
            Law::Smoothed { base, width } => base.mean_value() + 0.5 * width,
        }
    }

    /// `integral of P(X > t) dt` over `[lo, hi]`, i.e. `E[clamp(X, lo, hi)] - lo`.
    pub fn integrated_survival(&self, lo: f64, hi: f64) -> f64 {
        if hi.is_nan() || lo.is_nan() || hi <= lo {
            return 0.0;
        }
        // P(X > t) = 1 below zero for every law here.
        if lo < 0.0 {
            return (hi.min(0.0) - lo) + self.integrated_survival(0.0, hi);
        }
        match self {
            Law::Exponential { rate } => -(-rate * lo).exp() * (-rate * (hi - lo)).exp_m1() / rate,
            Law::TruncatedExponential { cap } => {
                let top = hi.min(*cap);
                if top <= lo {
                    0.0
                } else {
                    -(-lo).exp() * (-(top - lo)).exp_m1()
                }
            }
            Law::UniformInterval { a, b } => {
                let below = (hi.min(*a) - lo).max(0.0);
                let s = lo.max(*a);
                let e = hi.min(*b);
                let inside = if e > s {
                    ((b - s) * (b - s) - (b - e) * (b - e)) / (2.0 * (b - a))
                } else {
                    0.0
                };
                below + inside
            }
            Law::Discrete(d) => d.points().map(|(v, p)| p * (v.clamp(lo, hi) - lo)).sum(),
            Law::Degenerate(v) => v.clamp(lo, hi) - lo,
            Law::Empirical(s) => {
                s.iter().map(|v| v.clamp(lo, hi) - lo).sum::<f64>() / s.len() as f64
            }
            Law::Smoothed { base, width } => {
                // Average over the perturbation of the base integral on the shifted window.
                let steps = 64;
                let h = width / steps as f64;
                let mut acc = 0.0;
                for k in 0..steps {
                    let u = (k as f64 + 0.5) * h;
                    acc += base.integrated_survival(lo - u, hi - u);
                }
                acc / steps as f64
            }
        }
    }

    /// `E[max(X - theta, 0)]`.
    pub fn expected_excess(&self, theta: f64) -> f64 {
        self.integrated_survival(theta, f64::INFINITY)
    }

    /// `E[min(X, y)]`.
    pub fn limited_mean(&self, y: f64) -> f64 {
        self.integrated_survival(0.0, y)
    }

    fn survival_at(&self, x: f64) -> f64 {
        match self {
            Law::Exponential { rate } => {
                if x < 0.0 {
                    1.0
                } else {
                    (-rate * x).exp()
                }
            }
            Law::TruncatedExponential { cap } => {
                if x < 0.0 {
                    1.0
                } else if x >= *cap {
                    0.0
                } else {
                    (-x).exp()
                }
            }
            Law::UniformInterval { a, b } => {
                if x < *a {
                    1.0
                } else if x >= *b {
                    0.0
                } else {
                    (b - x) / (b - a)
                }
            }
            Law::Discrete(d) => d.survival(x),
            Law::Degenerate(v) => {
                if x < *v {
                    1.0
                } else {
                    0.0
                }
            }
            Law::Empirical(s) => {
                let le = s.partition_point(|&v| v <= x);
                (s.len() - le) as f64 / s.len() as f64
            }
            Law::Smoothed { base, width } => {
                (base.integrated_survival(x - width, x) / width).clamp(0.0, 1.0)
            }
        }
    }

    fn quantile_at(&self, alpha: f64) -> Result<f64> {
        check_alpha(alpha)?;
        Ok(match self {
            Law::Exponential { rate } => -alpha.ln() / rate,
            Law::TruncatedExponential { cap } => (-alpha.ln()).min(*cap),
            Law::UniformInterval { a, b } => b - alpha * (b - a),
            Law::Discrete(d) => d.upper_quantile(alpha),
            Law::Degenerate(v) => *v,
            Law::Empirical(s) => {
                let m = s.len() as f64;
                let idx = (0..s.len()).collect::<Vec<_>>().partition_point(|&i| {
                    let gt = s.len() - s.partition_point(|&v| v <= s[i]);
                    gt as f64 > alpha * m * (1.0 + 1e-12)
                });
                s[idx.min(s.len() - 1)]
            }
            Law::Smoothed { base, width } => {
                if alpha == 1.0 {
                    return Ok(base.ess_inf());
                }
                let mut lo = base.ess_inf();
                let mut hi = base.quantile_at(alpha)? + width;
                // Bisect to the last representable float.
                for _ in 0..2000 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.survival_at(mid) <= alpha {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                hi
            }
        })
    }

    fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        match self {
            Law::Exponential { rate } => {
                let e: f64 = Exp1.sample(rng);
                e / rate
            }
            Law::TruncatedExponential { cap } => {
                let e: f64 = Exp1.sample(rng);
                e.min(*cap)
            }
            Law::UniformInterval { a, b } => a + (b - a) * rng.random::<f64>(),
            Law::Discrete(d) => d.sample(rng),
            Law::Degenerate(v) => *v,
            Law::Empirical(s) => s[rng.random_range(0..s.len())],
            Law::Smoothed { base, width } => base.draw(rng) + width * rng.random::<f64>(),
        }
    }
}

impl Distribution for Law {
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        self.draw(rng)
    }

    fn survival(&self, x: f64) -> f64 {
        self.survival_at(x)
    }

    fn upper_quantile(&self, alpha: f64) -> Result<f64> {
        self.quantile_at(alpha)
    }

    fn mean(&self) -> Option<f64> {
        Some(self.mean_value())
    }
}

/// Uniform law over the samples.
pub fn empirical_from_samples(samples: &[f64]) -> Result<Law> {
    Law::empirical(samples)
}

/// Smallest `tau` with `prod_i (1 - S_i(tau)) >= 1 - alpha`: the upper quantile of the
/// maximum of independent draws from `laws`.
pub fn max_law_upper_quantile(laws: &[Law], alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if laws.is_empty() {
        return Err(Error::validation("max law of an empty family"));
    }
    if alpha == 1.0 {
        return Ok(laws.iter().map(Law::ess_inf).fold(0.0, f64::max));
    }
    let target = (-alpha).ln_1p();
    let holds = |tau: f64| -> bool {
        let mut acc = 0.0;
        for law in laws {
            acc += (-law.survival(tau)).ln_1p();
            if acc < target {
                return false;
            }
        }
        true
    };
    if holds(0.0) {
        return Ok(0.0);
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut grown = 0;
    while !holds(hi) {
        lo = hi;
        hi *= 2.0;
        grown += 1;
        if grown > 1100 || !hi.is_finite() {
            return Err(Error::Numeric("max-law quantile bracket diverged".into()));
        }
    }
    let mut steps = 0;
    // Bisect to float resolution; the smoothing widths are far below any fixed tolerance.
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if steps == MAX_BISECTION_STEPS {
            return Err(Error::Numeric(format!(
                "max-law quantile did not converge in {MAX_BISECTION_STEPS} steps"
            )));
        }
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
    }
    Ok(hi)
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Exponential { rate } => write!(f, "exp({rate})"),
            Law::TruncatedExponential { cap } => write!(f, "truncexp({cap})"),
            Law::UniformInterval { a, b } => write!(f, "uniform({a},{b})"),
            Law::Discrete(d) => {
                f.write_str("discrete(")?;
                for (i, (v, p)) in d.points().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}:{p}")?;
                }
                f.write_str(")")
            }
            Law::Degenerate(v) => write!(f, "degenerate({v})"),
            Law::Empirical(s) => {
                f.write_str("empirical(")?;
                for (i, v) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
            Law::Smoothed { base, width } => write!(f, "smoothed({base},{width})"),
        }
    }
}

impl FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Law> {
        parse_law(s)
    }
}

impl Serialize for Law {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Law {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parse a law from the text format.
pub fn parse_law(input: &str) -> Result<Law> {
    let mut p = Parser { src: input, pos: 0 };
    let law = p.law()?;
    p.skip_ws();
    if p.pos < input.len() {
        return Err(p.error("trailing input"));
    }
    Ok(law)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(pos, |nl| pos - nl - 1) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a law name"));
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn number(&mut self) -> Result<(usize, f64)> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-')))
            .unwrap_or(self.rest().len());
        let text = &self.src[start..start + len];
        let value = text
            .parse::<f64>()
            .map_err(|_| self.error_at(start, format!("expected a number, found {text:?}")))?;
        self.pos += len;
        Ok((start, value))
    }

    fn number_list(&mut self) -> Result<Vec<f64>> {
        let mut out = vec![self.number()?.1];
        while self.eat(',') {
            out.push(self.number()?.1);
        }
        Ok(out)
    }

    fn law(&mut self) -> Result<Law> {
        let (start, name) = self.ident()?;
        let name = name.to_string();
        self.expect('(')?;
        let located = |p: &Self, e: Error| match e {
            Error::Validation(m) => p.error_at(start, m),
            other => other,
        };
        let law = match name.as_str() {
            "exp" => {
                let (_, r) = self.number()?;
                Law::exponential(r).map_err(|e| located(self, e))?
            }
            "truncexp" => {
                let (_, c) = self.number()?;
                Law::truncated_exponential(c).map_err(|e| located(self, e))?
            }
            "uniform" => {
                let (_, a) = self.number()?;
                self.expect(',')?;
                let (_, b) = self.number()?;
                Law::uniform(a, b).map_err(|e| located(self, e))?
            }
            "degenerate" => {
                let (_, v) = self.number()?;
                Law::degenerate(v).map_err(|e| located(self, e))?
            }
            "discrete" => {
                let mut points = Vec::new();
                loop {
                    let (_, v) = self.number()?;
                    self.expect(':')?;
                    let (_, w) = self.number()?;
                    points.push((v, w));
                    if !self.eat(',') {
                        break;
                    }
                }
                Law::discrete(&points).map_err(|e| located(self, e))?
            }
            "empirical" => {
                let values = self.number_list()?;
                Law::empirical(&values).map_err(|e| located(self, e))?
            }
            "smoothed" => {
                let base = self.law()?;
                self.expect(',')?;
                let (_, w) = self.number()?;
                base.smoothed(w).map_err(|e| located(self, e))?
            }
            other => return Err(self.error_at(start, format!("unknown law {other:?}"))),
        };
        self.expect(')')?;
        Ok(law)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn exponential_quantiles() {
        let e = Law::exponential(1.0).unwrap();
        assert_eq!(e.upper_quantile(1.0).unwrap(), 0.0);
        assert!(close(e.upper_quantile(0.5).unwrap(), 2f64.ln(), 1e-15));
        let e2 = Law::exponential(2.0).unwrap();
        assert!(close(
            e2.upper_quantile(0.25).unwrap(),
            4f64.ln() / 2.0,
            1e-15
        ));
    }

    #[test]
    fn truncated_exponential_quantile_caps() {
        let cap = 4f64.ln() / 2.0;
        let t = Law::truncated_exponential(cap).unwrap();
        let q = t.upper_quantile(0.4).unwrap();
        assert!(close(q, 2f64.ln(), 1e-12));
        assert!(close(
            t.upper_quantile(0.9).unwrap(),
            (1.0f64 / 0.9).ln(),
            1e-15
        ));
        // atom at the cap
        assert!(close(t.survival(cap - 1e-12), 0.5, 1e-9));
        assert_eq!(t.survival(cap), 0.0);
    }

    #[test]
    fn truncated_exponential_quantile_matches_sampled_survival() {
        let cap = 4f64.ln() / 2.0;
        let t = Law::truncated_exponential(cap).unwrap();
        let q = t.upper_quantile(0.4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = 200_000;
        let above = (0..m).filter(|_| t.sample(&mut rng) > q - 1e-9).count();
        // P(X > q - eps) = P(X = cap) = 1/2 here, and P(X > q) = 0 <= 0.4.
        assert!(close(above as f64 / m as f64, 0.5, 0.01));
    }

    #[test]
    fn alpha_domain() {
        let e = Law::exponential(1.0).unwrap();
        for bad in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(e.upper_quantile(bad), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn max_law_examples() {
        let u = Law::uniform(0.0, 1.0).unwrap();
        let q = max_law_upper_quantile(&[u.clone(), u], 0.5).unwrap();
        assert!(close(q, 0.5f64.sqrt(), 2e-9));
        let e = Law::exponential(1.0).unwrap();
        let q = max_law_upper_quantile(std::slice::from_ref(&e), 0.5).unwrap();
        assert!(close(q, 2f64.ln(), 2e-9));
        let many = vec![e; 64];
        let q = max_law_upper_quantile(&many, 0.5).unwrap();
        let exact = -(1.0 - 0.5f64.powf(1.0 / 64.0)).ln();
        assert!(close(q, exact, 2e-9));
    }

    #[test]
    fn max_law_median_matches_monte_carlo() {
        let e = Law::exponential(1.0).unwrap();
        let q = max_law_upper_quantile(&vec![e.clone(); 64], 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let trials = 20_001;
        let mut maxima: Vec<f64> = (0..trials)
            .map(|_| (0..64).map(|_| e.sample(&mut rng)).fold(0.0, f64::max))
            .collect();
        maxima.sort_by(f64::total_cmp);
        assert!(close(maxima[trials / 2], q, 0.03));
    }

    #[test]
    fn max_law_alpha_one_is_ess_inf() {
        let laws = [
            Law::uniform(1.0, 2.0).unwrap(),
            Law::degenerate(0.5).unwrap(),
        ];
        assert_eq!(max_law_upper_quantile(&laws, 1.0).unwrap(), 1.0);
        assert!(max_law_upper_quantile(&[], 0.5).is_err());
    }

    #[test]
    fn max_law_with_atoms_returns_support_point() {
        let laws = [Law::degenerate(3.0).unwrap(), Law::degenerate(5.0).unwrap()];
        let q = max_law_upper_quantile(&laws, 0.5).unwrap();
        assert!(close(q, 5.0, 2e-9));
    }

    #[test]
    fn empirical_examples() {
        let l = empirical_from_samples(&[2.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!((0..10).all(|_| l.sample(&mut rng) == 2.0));
        assert_eq!(
            empirical_from_samples(&[1.0, 3.0]).unwrap().mean(),
            Some(2.0)
        );
        let l = empirical_from_samples(&[0.0, 0.0, 6.0]).unwrap();
        assert!(close(l.survival(0.0), 1.0 / 3.0, 1e-15));
        assert_eq!(l.upper_quantile(1.0).unwrap(), 0.0);
        assert_eq!(l.upper_quantile(0.5).unwrap(), 0.0);
        assert_eq!(l.upper_quantile(0.2).unwrap(), 6.0);
        assert!(matches!(
            empirical_from_samples(&[]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn discrete_quantiles_and_survival() {
        let d = Law::discrete(&[(1.0, 1.0), (3.0, 1.0), (2.0, 2.0)]).unwrap();
        assert_eq!(d.survival(0.5), 1.0);
        assert!(close(d.survival(1.0), 0.75, 1e-15));
        assert!(close(d.survival(2.0), 0.25, 1e-15));
        assert_eq!(d.survival(3.0), 0.0);
        assert_eq!(d.upper_quantile(1.0).unwrap(), 1.0);
        assert_eq!(d.upper_quantile(0.75).unwrap(), 1.0);
        assert_eq!(d.upper_quantile(0.5).unwrap(), 2.0);
        assert_eq!(d.upper_quantile(0.1).unwrap(), 3.0);
        assert!(close(d.mean().unwrap(), 2.0, 1e-15));
    }

    #[test]
    fn smoothed_law_is_continuous() {
        let s = Law::degenerate(2.0).unwrap().continuous();
        assert!(!s.has_atoms());
        let q = s.upper_quantile(0.3).unwrap();
        assert!(q > 2.0 && q < 2.0 + 1e-8);
        assert!(close(s.survival(q), 0.3, 1e-6));
        assert_eq!(s.upper_quantile(1.0).unwrap(), 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = s.sample(&mut rng);
        assert!((2.0..2.0 + 1e-8).contains(&x));
    }

    #[test]
    fn integrated_survival_matches_closed_forms() {
        let e = Law::exponential(1.0).unwrap();
        assert!(close(e.expected_excess(1.0), (-1.0f64).exp(), 1e-15));
        assert!(close(e.limited_mean(f64::INFINITY), 1.0, 1e-15));
        let u = Law::uniform(0.0, 1.0).unwrap();
        let c: f64 = 0.5f64.sqrt();
        assert!(close(u.expected_excess(c), (1.0 - c).powi(2) / 2.0, 1e-15));
        assert!(close(u.integrated_survival(-1.0, 0.5), 1.0 + 0.375, 1e-15));
        let t = Law::truncated_exponential(1.0).unwrap();
        assert!(close(t.limited_mean(5.0), t.mean().unwrap(), 1e-15));
    }

    #[test]
    fn parse_catalog() {
        assert_eq!(parse_law("exp(1)").unwrap(), Law::exponential(1.0).unwrap());
        assert_eq!(
            parse_law(" uniform( 0 , 2 ) ").unwrap(),
            Law::uniform(0.0, 2.0).unwrap()
        );
        assert_eq!(
            parse_law("truncexp(2.5)").unwrap(),
            Law::truncated_exponential(2.5).unwrap()
        );
        assert_eq!(
            parse_law("discrete(0:1,2:3)").unwrap(),
            Law::discrete(&[(0.0, 1.0), (2.0, 3.0)]).unwrap()
        );
        assert_eq!(parse_law("degenerate(4)").unwrap(), Law::Degenerate(4.0));
        assert!(matches!(
            parse_law("smoothed(degenerate(1), 0.5)").unwrap(),
            Law::Smoothed { .. }
        ));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_law("uniform(0,\n  x)").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 3,
                message: "expected a number, found \"\"".into()
            }
        );
        match parse_law("gamma(1)").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 1)),
            other => panic!("{other:?}"),
        }
        match parse_law("exp(-1)").unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_law("exp(1) extra").is_err());
        assert!(parse_law("uniform(2,1)").is_err());
        assert!(parse_law("discrete(1:0)").is_err());
    }

    #[test]
    fn sampling_matches_survival() {
        let laws = [
            Law::exponential(1.5).unwrap(),
            Law::truncated_exponential(1.0).unwrap(),
            Law::uniform(0.5, 2.0).unwrap(),
            Law::discrete(&[(0.0, 1.0), (1.0, 2.0), (3.0, 1.0)]).unwrap(),
            Law::empirical(&[0.2, 0.7, 0.7, 1.9]).unwrap(),
        ];
        let probes = [0.1, 0.5, 0.9, 1.3, 2.0];
        let m = 200_000;
        for (s, law) in laws.iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + s as u64);
            let draws: Vec<f64> = (0..m).map(|_| law.sample(&mut rng)).collect();
            for &x in &probes {
                let p = law.survival(x);
                let hat = draws.iter().filter(|&&d| d > x).count() as f64 / m as f64;
                let se = (p * (1.0 - p) / m as f64).sqrt().max(1e-12);
                assert!(
                    (hat - p).abs() <= 4.0 * se + 1e-12,
                    "{law} at {x}: {hat} vs {p}"
                );
            }
        }
    }

    #[test]
    fn exponential_memorylessness() {
        let e = Law::exponential(2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let draws: Vec<f64> = (0..400_000).map(|_| e.sample(&mut rng)).collect();
        for t in [0.0, 1.0, 2.0] {
            let tail: Vec<f64> = draws.iter().filter(|&&x| x > t).map(|x| x - t).collect();
            let mean = tail.iter().sum::<f64>() / tail.len() as f64;
            let se = 0.5 / (tail.len() as f64).sqrt();
            assert!((mean - 0.5).abs() <= 4.0 * se, "t={t}: {mean}");
        }
    }

    fn continuous_law() -> impl Strategy<Value = Law> {
        prop_oneof![
            (0.1f64..5.0).prop_map(|r| Law::exponential(r).unwrap()),
            (0.0f64..3.0, 0.1f64..3.0).prop_map(|(a, w)| Law::uniform(a, a + w).unwrap()),
            (0.5f64..4.0).prop_map(|c| Law::truncated_exponential(c).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn quantile_survival_round_trip(law in continuous_law(), alpha in 1e-6f64..1.0) {
            let q = law.upper_quantile(alpha).unwrap();
            let s = law.survival(q);
            if let Law::TruncatedExponential { cap } = law {
                if q == cap {
                    prop_assert!(s <= alpha);
                    return Ok(());
                }
            }
            prop_assert!((s - alpha).abs() <= 1e-8, "{} alpha={} s={}", law, alpha, s);
        }

        #[test]
        fn quantile_is_nonincreasing(law in continuous_law(), a in 1e-6f64..1.0, b in 1e-6f64..1.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(law.upper_quantile(hi).unwrap() <= law.upper_quantile(lo).unwrap());
        }

        #[test]
        fn display_parse_round_trip(
            law in prop_oneof![
                continuous_law(),
                proptest::collection::vec((0.0f64..10.0, 0.1f64..3.0), 1..5)
                    .prop_map(|p| Law::discrete(&p).unwrap()),
                (0.0f64..10.0).prop_map(|v| Law::degenerate(v).unwrap()),
            ]
        ) {
            let text = law.to_string();
            let back = parse_law(&text).unwrap();
            match (&law, &back) {
                (Law::Discrete(a), Law::Discrete(b)) => {
                    for ((va, pa), (vb, pb)) in a.points().zip(b.points()) {
                        prop_assert_eq!(va, vb);
                        prop_assert!((pa - pb).abs() < 1e-12);
                    }
                }
                _ => prop_assert_eq!(&law, &back),
            }
        }
    }
}
