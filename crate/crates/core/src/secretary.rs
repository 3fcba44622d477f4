//! Secretary-setting strategies.
//!
//! The values are a permutation of fixed numbers `a_1, ..., a_n`. Strategies differ in
//! what they are told up front (the full multiset, only the maximum, a lower estimate
//! of the maximum, or nothing) and in the arrival order they are designed for.
//!
//! All of them cut `[0, r]` into `k` equal buckets, where `r` is the maximum or a hint,
//! and test at a bucket boundary `r (j - 1) / k`.

use rand::{Rng, RngCore};

use crate::bit_sampling::BitSampler;
use crate::engine::{Action, StepContext, StepOutcome, Strategy};
use crate::error::{Error, Result};
use crate::prophet::SingleThreshold;
use crate::rng::{seeded, SimRng};

/// Bucket boundary `r j / k`; exact at `j = 0` and `j = k`.
pub fn level(j: usize, k: usize, r: f64) -> f64 {
    r * j as f64 / k as f64
}

/// `floor(log2 n) + 2`.
pub fn random_order_levels(n: usize) -> usize {
    n.max(1).ilog2() as usize + 2
}

/// `2 floor(log2 n) + 2`.
pub fn arbitrary_order_levels(n: usize) -> usize {
    2 * n.max(1).ilog2() as usize + 2
}

/// Smallest `k >= 2` with `(k - 1) n^(-1/(k-1)) >= 1`.
pub fn gap_levels(n: usize) -> usize {
    let n = n.max(1) as f64;
    let mut k = 2usize;
    loop {
        let m = (k - 1) as f64;
        if m * n.powf(-1.0 / m) >= 1.0 {
            return k;
        }
        k += 1;
    }
}

/// Counts of values per bucket of `[0, r]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BucketProfile {
    pub k: usize,
    pub reference: f64,
    /// `at_least[j - 1] = #{a_i > r (j - 1) / k}` for `j = 1..=k+1`.
    at_least: Vec<usize>,
}

impl BucketProfile {
    pub fn new(values: &[f64], k: usize, reference: f64) -> Result<BucketProfile> {
        if k == 0 {
            return Err(Error::validation("bucket count must be positive"));
        }
        if !(reference.is_finite() && reference >= 0.0) {
            return Err(Error::validation(format!(
                "reference must be finite and nonnegative, got {reference}"
            )));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let at_least = (1..=k + 1)
            .map(|j| {
                let boundary = level(j - 1, k, reference);
                sorted.len() - sorted.partition_point(|&v| v <= boundary)
            })
            .collect();
        Ok(BucketProfile {
            k,
            reference,
            at_least,
        })
    }

    /// `n_j`: values in `(r (j-1)/k, r j/k]`, for `j` in `1..=k`.
    pub fn count(&self, j: usize) -> usize {
        self.at_least[j - 1] - self.at_least[j]
    }

    /// `n_{>=j}`: values above `r (j-1)/k`, for `j` in `1..=k+1`.
    pub fn at_least(&self, j: usize) -> usize {
        self.at_least[j - 1]
    }

    /// Smallest `j` in `1..k` with `n_j < n_{>=j+1}`.
    pub fn first_heavy_top(&self) -> Option<usize> {
        (1..self.k).find(|&j| self.count(j) < self.at_least(j + 1))
    }
}

/// Bucket of `x` in `[0, r]` cut into `k` pieces; 0 for `x <= 0`.
/// A value on a boundary goes to the lower bucket.
fn bucket_of(x: f64, k: usize, r: f64) -> usize {
    (0..k).take_while(|&l| x > level(l, k, r)).count()
}

/// Accept the first option without testing.
#[derive(Debug, Clone, Copy, Default)]
pub struct AcceptFirst;

impl Strategy for AcceptFirst {
    fn begin_step(&mut self, _: &StepContext<'_>) -> Action {
        Action::Accept
    }

    fn on_outcome(&mut self, _: &StepContext<'_>, _: StepOutcome) -> Action {
        Action::Accept
    }
}

/// Full information, random order: single threshold at the lower edge of the first
/// bucket holding fewer values than all buckets above it.
pub fn warmup_full_info(values: &[f64]) -> Result<SingleThreshold> {
    if values.is_empty() {
        return Err(Error::validation("empty value multiset"));
    }
    let top = values.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return Ok(SingleThreshold::accept_untested());
    }
    let k = random_order_levels(values.len());
    let profile = BucketProfile::new(values, k, top)?;
    let j = profile.first_heavy_top().ok_or_else(|| {
        Error::Assertion(format!(
            "no bucket with n_j < n_(>=j+1) among {} values",
            values.len()
        ))
    })?;
    Ok(SingleThreshold::new(level(j - 1, k, top)))
}

/// Random order with a lower estimate `hint` of the maximum: single threshold at a
/// uniformly random bucket edge `hint (j-1)/k`, `j` in `1..k`.
pub fn hinted_random_order(hint: f64, n: usize, rng: &mut dyn RngCore) -> Result<SingleThreshold> {
    if !(hint.is_finite() && hint >= 0.0) {
        return Err(Error::validation(format!(
            "hint must be finite and nonnegative, got {hint}"
        )));
    }
    let k = random_order_levels(n);
    let j = rng.random_range(1..k);
    Ok(SingleThreshold::new(level(j - 1, k, hint)))
}

/// Random order, maximum known.
pub fn optimum_info_random_order(
    a_max: f64,
    n: usize,
    rng: &mut dyn RngCore,
) -> Result<SingleThreshold> {
    hinted_random_order(a_max, n, rng)
}

/// Random order, nothing known: observe the first half, then use its maximum either as
/// a hint or as a single threshold.
#[derive(Debug, Clone)]
pub struct NoInfoRandomOrder {
    observe: usize,
    best: f64,
    coin: bool,
    rng: SimRng,
    tail: Option<SingleThreshold>,
}

pub fn no_info_random_order(n: usize, rng: &mut dyn RngCore) -> NoInfoRandomOrder {
    NoInfoRandomOrder {
        observe: n / 2,
        best: 0.0,
        coin: rng.random::<bool>(),
        rng: seeded(rng.next_u64()),
        tail: None,
    }
}

impl NoInfoRandomOrder {
    fn tail_context<'a>(&self, ctx: &StepContext<'a>) -> StepContext<'a> {
        StepContext {
            n: ctx.n - self.observe,
            index: ctx.index - self.observe,
            info: ctx.info,
        }
    }
}

impl Strategy for NoInfoRandomOrder {
    fn begin_step(&mut self, ctx: &StepContext<'_>) -> Action {
        if ctx.n == 1 {
            return Action::Accept;
        }
        if ctx.index <= self.observe {
            return Action::observe();
        }
        let inner = ctx.n - self.observe;
        let rng = &mut self.rng;
        let best = self.best;
        let coin = self.coin;
        let tail = self.tail.get_or_insert_with(|| {
            if coin {
                hinted_random_order(best, inner, rng).expect("observed values are valid")
            } else {
                SingleThreshold::new(best)
            }
        });
        let sub = StepContext {
            n: inner,
            index: ctx.index - (ctx.n - inner),
            info: ctx.info,
        };
        tail.begin_step(&sub)
    }

    fn on_outcome(&mut self, ctx: &StepContext<'_>, outcome: StepOutcome) -> Action {
        if ctx.index <= self.observe {
            if let Some(x) = outcome.observed() {
                self.best = self.best.max(x);
            }
            return Action::Reject;
        }
        let sub = self.tail_context(ctx);
        self.tail
            .as_mut()
            .expect("tail strategy set at step begin")
            .on_outcome(&sub, outcome)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ArbitraryPhase {
    Screen,
    Classify,
}

/// Arbitrary order with a lower estimate of the maximum.
///
/// Tests every option at `hint (j*-1)/k`. For each option that passes, the embedded
/// bit sampler decides whether to commit (accept). If not, a follow-up test up to
/// cumulative `hint (j*+1)/k` classifies the option: pass feeds a one, fail a zero,
/// and the option is rejected.
#[derive(Debug, Clone)]
pub struct ArbitraryOrderHinted {
    theta: f64,
    upper: f64,
    sampler: BitSampler,
    phase: ArbitraryPhase,
    rng: SimRng,
}

pub fn arbitrary_order_hinted(
    hint: f64,
    n: usize,
    rng: &mut dyn RngCore,
) -> Result<ArbitraryOrderHinted> {
    let k = arbitrary_order_levels(n);
    let j = rng.random_range(1..k);
    ArbitraryOrderHinted::with_level(hint, n, j, seeded(rng.next_u64()))
}

impl ArbitraryOrderHinted {
    /// Fixed bucket index `j` in `1..k`.
    pub fn with_level(hint: f64, n: usize, j: usize, rng: SimRng) -> Result<Self> {
        if !(hint.is_finite() && hint >= 0.0) {
            return Err(Error::validation(format!(
                "hint must be finite and nonnegative, got {hint}"
            )));
        }
        let k = arbitrary_order_levels(n);
        if j == 0 || j >= k {
            return Err(Error::domain(format!("bucket index {j} outside 1..{k}")));
        }
        Ok(ArbitraryOrderHinted {
            theta: level(j - 1, k, hint),
            upper: level(j + 1, k, hint),
            sampler: BitSampler::new(),
            phase: ArbitraryPhase::Screen,
            rng,
        })
    }

    pub fn threshold(&self) -> f64 {
        self.theta
    }

    pub fn classifier(&self) -> f64 {
        self.upper
    }

    pub fn sampler(&self) -> &BitSampler {
        &self.sampler
    }
}

impl Strategy for ArbitraryOrderHinted {
    fn begin_step(&mut self, _: &StepContext<'_>) -> Action {
        self.phase = ArbitraryPhase::Screen;
        Action::Test(self.theta)
    }

    fn on_outcome(&mut self, _: &StepContext<'_>, outcome: StepOutcome) -> Action {
        match (self.phase, outcome.passed()) {
            (ArbitraryPhase::Screen, false) => Action::Reject,
            (ArbitraryPhase::Screen, true) => {
                if self.sampler.decide(&mut self.rng) {
                    Action::Accept
                } else {
                    self.phase = ArbitraryPhase::Classify;
                    Action::Test(self.upper - self.theta)
                }
            }
            (ArbitraryPhase::Classify, passed) => {
                self.sampler.observe(passed);
                Action::Reject
            }
        }
    }
}

/// Tracks unseen values per bucket and looks for an empty bucket below a nonempty one.
#[derive(Debug, Clone, PartialEq)]
pub struct GapWatch {
    k: usize,
    reference: f64,
    /// `unseen[j]` for buckets `0..=k`; bucket 0 holds values `<= 0`.
    unseen: Vec<usize>,
}

impl GapWatch {
    pub fn new(values: &[f64], k: usize, reference: f64) -> GapWatch {
        let mut unseen = vec![0; k + 1];
        for &v in values {
            unseen[bucket_of(v, k, reference)] += 1;
        }
        GapWatch {
            k,
            reference,
            unseen,
        }
    }

    /// Remove one observed value.
    pub fn remove(&mut self, x: f64) {
        let b = bucket_of(x, self.k, self.reference);
        self.unseen[b] = self.unseen[b].saturating_sub(1);
    }

    /// First `j` in `1..k` whose bucket is empty while some unseen value lies above it.
    pub fn gap(&self) -> Option<usize> {
        let mut above = self.unseen[self.k];
        let mut found = None;
        for j in (1..self.k).rev() {
            if self.unseen[j] == 0 && above > 0 {
                found = Some(j);
            }
            above += self.unseen[j];
        }
        found
    }

    /// Threshold that secures a bucket width once a gap exists.
    pub fn gap_threshold(&self) -> Option<f64> {
        self.gap().map(|j| level(j - 1, self.k, self.reference))
    }

    pub fn unseen(&self) -> usize {
        self.unseen.iter().sum()
    }
}

/// Full information, random order: observe and reject until a gap opens among the
/// unseen values, then single threshold at its lower edge.
#[derive(Debug, Clone)]
pub struct GapAlgorithm {
    watch: GapWatch,
    armed: Option<f64>,
    trivial: bool,
}

pub fn gap_algorithm(values: &[f64]) -> Result<GapAlgorithm> {
    if values.is_empty() {
        return Err(Error::validation("empty value multiset"));
    }
    let top = values.iter().copied().fold(0.0, f64::max);
    let k = gap_levels(values.len());
    Ok(GapAlgorithm {
        watch: GapWatch::new(values, k, top),
        armed: None,
        trivial: top == 0.0,
    })
}

impl GapAlgorithm {
    pub fn k(&self) -> usize {
        self.watch.k
    }

    pub fn armed_threshold(&self) -> Option<f64> {
        self.armed
    }
}

impl Strategy for GapAlgorithm {
    fn begin_step(&mut self, _: &StepContext<'_>) -> Action {
        if self.trivial {
            return Action::Accept;
        }
        if self.armed.is_none() {
            self.armed = self.watch.gap_threshold();
        }
        match self.armed {
            Some(theta) => Action::Test(theta),
            None => Action::observe(),
        }
    }

    fn on_outcome(&mut self, _: &StepContext<'_>, outcome: StepOutcome) -> Action {
        if self.armed.is_some() {
            return if outcome.passed() {
                Action::Accept
            } else {
                Action::Reject
            };
        }
        if let Some(x) = outcome.observed() {
            self.watch.remove(x);
        }
        Action::Reject
    }
}

/// Accept a uniformly chosen option without testing.
#[derive(Debug, Clone, Copy)]
pub struct UniformPick {
    pub chosen: usize,
}

pub fn baseline_uniform(n: usize, rng: &mut dyn RngCore) -> Result<UniformPick> {
    if n == 0 {
        return Err(Error::validation("n must be at least 1"));
    }
    Ok(UniformPick {
        chosen: rng.random_range(1..=n),
    })
}

impl Strategy for UniformPick {
    fn begin_step(&mut self, ctx: &StepContext<'_>) -> Action {
        if ctx.index == self.chosen {
            Action::Accept
        } else {
            Action::Reject
        }
    }

    fn on_outcome(&mut self, _: &StepContext<'_>, _: StepOutcome) -> Action {
        Action::Reject
    }
}
