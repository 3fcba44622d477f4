//! Prophet-setting strategies: independent values with known laws.
//!
//! Every strategy here is a randomized single threshold or a small variation of one.
//! Atomic laws are routed through [`Law::continuous`] unless a plan is built with the
//! `raw` constructors. Inside the strategies the quantile at level 1 is taken as 0, so
//! the lowest rung of every threshold ladder accepts any positive value.

use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::distributions::{max_law_upper_quantile, Distribution, Law};
use crate::engine::{Action, StepContext, StepOutcome, Strategy};
use crate::error::{Error, Result};
use crate::secretary::arbitrary_order_hinted;

/// Slack on the tail-mass check `sum_i S_i(tau_1/2) >= 1/2`.
pub const TAIL_MASS_TOLERANCE: f64 = 1e-7;

/// Tests every option once at `theta` and accepts the first pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleThreshold {
    theta: f64,
    untested: bool,
}

impl SingleThreshold {
    pub fn new(theta: f64) -> SingleThreshold {
        SingleThreshold {
            theta,
            untested: false,
        }
    }

    /// Accepts the first option without testing it.
    pub fn accept_untested() -> SingleThreshold {
        SingleThreshold {
            theta: 0.0,
            untested: true,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

pub fn single_threshold_strategy(theta: f64) -> Result<SingleThreshold> {
    if theta.is_nan() || theta < 0.0 {
        return Err(Error::validation(format!(
            "threshold must be nonnegative, got {theta}"
        )));
    }
    Ok(SingleThreshold::new(theta))
}

impl Strategy for SingleThreshold {
    fn begin_step(&mut self, _: &StepContext<'_>) -> Action {
        if self.untested {
            Action::Accept
        } else {
            Action::Test(self.theta)
        }
    }

    fn on_outcome(&mut self, _: &StepContext<'_>, outcome: StepOutcome) -> Action {
        if outcome.passed() {
            Action::Accept
        } else {
            Action::Reject
        }
    }
}

/// Threshold `tau_alpha`, with `tau_1 = 0`.
pub fn ladder_threshold(law: &Law, alpha: f64) -> Result<f64> {
    if alpha >= 1.0 {
        Ok(0.0)
    } else {
        law.upper_quantile(alpha)
    }
}

fn ceil_log2(n: usize) -> usize {
    (usize::BITS - n.max(1).saturating_sub(1).leading_zeros()) as usize
}

fn prepare(law: Law, smooth: bool) -> Law {
    if smooth {
        law.continuous()
    } else {
        law
    }
}

fn draw_weighted(weights: &[f64], rng: &mut dyn RngCore) -> usize {
    let u = rng.random::<f64>();
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return i;
        }
    }
    weights.len() - 1
}

/// Thresholds `tau_1, tau_1/2, ..., tau_2^-(k-1)` for `k = ceil(log2 n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileGrid {
    pub alphas: Vec<f64>,
    pub taus: Vec<f64>,
}

impl QuantileGrid {
    pub fn new(law: &Law, n: usize) -> Result<QuantileGrid> {
        let k = ceil_log2(n).max(1);
        let alphas: Vec<f64> = (0..k).map(|j| 0.5f64.powi(j as i32)).collect();
        let taus = alphas
            .iter()
            .map(|&a| ladder_threshold(law, a))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuantileGrid { alphas, taus })
    }

    pub fn k(&self) -> usize {
        self.alphas.len()
    }

    pub fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        self.taus[rng.random_range(0..self.taus.len())]
    }
}

/// Mixture over `tau_{x^{j/k}}` for `x = sqrt(ln n)/n`, weighted inversely to the
/// per-rung loss factors.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinedMixture {
    pub x: f64,
    pub k: usize,
    pub alphas: Vec<f64>,
    pub weights: Vec<f64>,
    pub taus: Vec<f64>,
}

impl RefinedMixture {
    /// Rung levels and weights; no law needed.
    pub fn levels(n: usize) -> Result<(f64, usize, Vec<f64>, Vec<f64>)> {
        if n < 3 {
            return Err(Error::validation(format!(
                "refined mixture needs n >= 3, got {n}"
            )));
        }
        let nf = n as f64;
        let x = nf.ln().sqrt() / nf;
        let k = ((1.0 / x).ln().ceil() as usize).max(1);
        let alphas: Vec<f64> = (0..=k).map(|j| x.powf(j as f64 / k as f64)).collect();
        let reach = -(nf * (-x).ln_1p()).exp_m1();
        let losses: Vec<f64> = (0..=k)
            .map(|j| {
                if j < k {
                    reach * alphas[j + 1] / alphas[j]
                } else {
                    reach / (nf * x)
                }
            })
            .collect();
        let gamma: f64 = losses.iter().map(|c| 1.0 / c).sum();
        let weights = losses.iter().map(|c| 1.0 / c / gamma).collect();
        Ok((x, k, alphas, weights))
    }

    pub fn new(law: &Law, n: usize) -> Result<RefinedMixture> {
        let (x, k, alphas, weights) = Self::levels(n)?;
        let taus = alphas
            .iter()
            .map(|&a| ladder_threshold(law, a))
            .collect::<Result<Vec<_>>>()?;
        Ok(RefinedMixture {
            x,
            k,
            alphas,
            weights,
            taus,
        })
    }

    pub fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        self.taus[draw_weighted(&self.weights, rng)]
    }
}

/// Precomputed thresholds for the i.i.d. strategies; cheap to instantiate per game.
#[derive(Debug, Clone)]
pub struct IidPlan {
    law: Law,
    n: usize,
    first: f64,
    grid: QuantileGrid,
    refined: Option<RefinedMixture>,
}

impl IidPlan {
    pub fn new(law: Law, n: usize) -> Result<IidPlan> {
        Self::build(prepare(law, true), n)
    }

    /// Uses `law` as given, atoms included.
    pub fn raw(law: Law, n: usize) -> Result<IidPlan> {
        Self::build(law, n)
    }

    fn build(law: Law, n: usize) -> Result<IidPlan> {
        if n == 0 {
            return Err(Error::validation("n must be at least 1"));
        }
        let first = ladder_threshold(&law, 1.0 / n as f64)?;
        let grid = QuantileGrid::new(&law, n)?;
        let refined = if n >= 3 {
            Some(RefinedMixture::new(&law, n)?)
        } else {
            None
        };
        Ok(IidPlan {
            law,
            n,
            first,
            grid,
            refined,
        })
    }

    pub fn law(&self) -> &Law {
        &self.law
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> &QuantileGrid {
        &self.grid
    }

    pub fn refined_mixture(&self) -> Option<&RefinedMixture> {
        self.refined.as_ref()
    }

    /// Single threshold at `tau_1/n`.
    pub fn first(&self) -> SingleThreshold {
        SingleThreshold::new(self.first)
    }

    /// Single threshold at `tau_alpha` for `alpha` uniform on the grid.
    pub fn second(&self, rng: &mut dyn RngCore) -> SingleThreshold {
        SingleThreshold::new(self.grid.draw(rng))
    }

    /// Fair coin between [`Self::first`] and [`Self::second`].
    pub fn mixture(&self, rng: &mut dyn RngCore) -> SingleThreshold {
        if rng.random::<bool>() {
            self.first()
        } else {
            self.second(rng)
        }
    }

    pub fn refined(&self, rng: &mut dyn RngCore) -> Result<SingleThreshold> {
        let mix = self.refined.as_ref().ok_or_else(|| {
            Error::validation(format!("refined mixture needs n >= 3, got {}", self.n))
        })?;
        Ok(SingleThreshold::new(mix.draw(rng)))
    }
}

pub fn iid_first_algorithm(law: &Law, n: usize) -> Result<SingleThreshold> {
    Ok(IidPlan::new(law.clone(), n)?.first())
}

pub fn iid_second_algorithm(law: &Law, n: usize, rng: &mut dyn RngCore) -> Result<SingleThreshold> {
    Ok(IidPlan::new(law.clone(), n)?.second(rng))
}

pub fn iid_mixture(law: &Law, n: usize, rng: &mut dyn RngCore) -> Result<SingleThreshold> {
    Ok(IidPlan::new(law.clone(), n)?.mixture(rng))
}

pub fn iid_refined(law: &Law, n: usize, rng: &mut dyn RngCore) -> Result<SingleThreshold> {
    IidPlan::new(law.clone(), n)?.refined(rng)
}

/// Options grouped by their tail mass at the median of the maximum.
#[derive(Debug, Clone)]
pub struct TailGroupProfile {
    laws: Arc<Vec<Law>>,
    pub k: usize,
    pub tau_half: f64,
    pub alphas: Vec<f64>,
    /// `groups[j]` for `j = 0..=k+2`, 1-based option indices in increasing order.
    pub groups: Vec<Vec<usize>>,
    pub j_star: usize,
    /// Probability of `alpha = 2^-j` for `j = 0..=j_star`.
    pub weights: Vec<f64>,
}

impl TailGroupProfile {
    pub fn new(laws: Vec<Law>) -> Result<TailGroupProfile> {
        Self::build(laws.into_iter().map(|l| prepare(l, true)).collect())
    }

    /// Uses the laws as given, atoms included.
    pub fn raw(laws: Vec<Law>) -> Result<TailGroupProfile> {
        Self::build(laws)
    }

    fn build(laws: Vec<Law>) -> Result<TailGroupProfile> {
        if laws.is_empty() {
            return Err(Error::validation("empty list of laws"));
        }
        let n = laws.len();
        let k = ceil_log2(n);
        let tau_half = max_law_upper_quantile(&laws, 0.5)?;
        let alphas: Vec<f64> = laws.iter().map(|l| l.survival(tau_half)).collect();
        let mass: f64 = alphas.iter().sum();
        if mass < 0.5 - TAIL_MASS_TOLERANCE {
            return Err(Error::Assertion(format!(
                "tail mass {mass} at the median of the maximum is below 1/2"
            )));
        }
        let mut groups = vec![Vec::new(); k + 3];
        for (i, &a) in alphas.iter().enumerate() {
            groups[tail_group(a, k)].push(i + 1);
        }
        let density = |j: usize| groups[j].len() as f64 * 0.5f64.powi(j as i32);
        let mut j_star = 0;
        for j in 1..=k + 1 {
            if density(j) > density(j_star) {
                j_star = j;
            }
        }
        let floor = 1.0 / (4.0 * (k + 2) as f64);
        if density(j_star) < floor * (1.0 - 1e-6) {
            return Err(Error::Assertion(format!(
                "densest group {j_star} has density {} below {floor}",
                density(j_star)
            )));
        }
        let size = groups[j_star].len() as f64;
        let raw: Vec<f64> = (0..=j_star)
            .map(|j| 1.0 / (size * 0.5f64.powi(j as i32)).min(1.0))
            .collect();
        let z: f64 = raw.iter().sum();
        let weights = raw.iter().map(|w| w / z).collect();
        Ok(TailGroupProfile {
            laws: Arc::new(laws),
            k,
            tau_half,
            alphas,
            groups,
            j_star,
            weights,
        })
    }

    pub fn laws(&self) -> &[Law] {
        &self.laws
    }

    pub fn n(&self) -> usize {
        self.laws.len()
    }

    pub fn selected_group(&self) -> &[usize] {
        &self.groups[self.j_star]
    }

    /// Block branch with a drawn `alpha` and block.
    pub fn block_strategy(&self, rng: &mut dyn RngCore) -> BlockStrategy {
        let j = draw_weighted(&self.weights, rng);
        let partition = BlockPartition::new(self.selected_group(), 1usize << j, rng);
        BlockStrategy {
            laws: Arc::clone(&self.laws),
            alpha: 0.5f64.powi(j as i32),
            members: partition.chosen_block().to_vec(),
        }
    }

    /// Fair coin between the block branch and a single threshold at `tau_1/2`.
    pub fn strategy(&self, rng: &mut dyn RngCore) -> GeneralProphet {
        if rng.random::<bool>() {
            GeneralProphet::Block(self.block_strategy(rng))
        } else {
            GeneralProphet::Median(SingleThreshold::new(self.tau_half))
        }
    }
}

/// Group of an option with tail mass `a`: `j` with `2^-(j+1) < a <= 2^-j` for
/// `j <= k+1`, and `k+2` for everything smaller.
pub fn tail_group(a: f64, k: usize) -> usize {
    (0..=k + 1)
        .find(|&j| a > 0.5f64.powi(j as i32 + 1))
        .unwrap_or(k + 2)
}

/// Chronological blocks of a group with one block drawn uniformly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    pub block_size: usize,
    pub blocks: Vec<Vec<usize>>,
    pub chosen: usize,
}

impl BlockPartition {
    pub fn new(members: &[usize], block_size: usize, rng: &mut dyn RngCore) -> BlockPartition {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        let blocks: Vec<Vec<usize>> = sorted
            .chunks(block_size.max(1))
            .map(<[usize]>::to_vec)
            .collect();
        let chosen = if blocks.is_empty() {
            0
        } else {
            rng.random_range(0..blocks.len())
        };
        BlockPartition {
            block_size,
            blocks,
            chosen,
        }
    }

    pub fn chosen_block(&self) -> &[usize] {
        self.blocks.get(self.chosen).map_or(&[], Vec::as_slice)
    }
}

/// Tests only the options of one block, each at its own `tau_alpha`.
#[derive(Debug, Clone)]
pub struct BlockStrategy {
    laws: Arc<Vec<Law>>,
    pub alpha: f64,
    pub members: Vec<usize>,
}

impl Strategy for BlockStrategy {
    fn begin_step(&mut self, ctx: &StepContext<'_>) -> Action {
        if self.members.binary_search(&ctx.index).is_err() {
            return Action::Reject;
        }
        let law = &self.laws[ctx.index - 1];
        Action::Test(ladder_threshold(law, self.alpha).expect("alpha is a power of 1/2"))
    }

    fn on_outcome(&mut self, _: &StepContext<'_>, outcome: StepOutcome) -> Action {
        if outcome.passed() {
            Action::Accept
        } else {
            Action::Reject
        }
    }
}

/// Either branch of the general prophet strategy.
#[derive(Debug, Clone)]
pub enum GeneralProphet {
    Block(BlockStrategy),
    Median(SingleThreshold),
}

impl Strategy for GeneralProphet {
    fn begin_step(&mut self, ctx: &StepContext<'_>) -> Action {
        match self {
            GeneralProphet::Block(s) => s.begin_step(ctx),
            GeneralProphet::Median(s) => s.begin_step(ctx),
        }
    }

    fn on_outcome(&mut self, ctx: &StepContext<'_>, outcome: StepOutcome) -> Action {
        match self {
            GeneralProphet::Block(s) => s.on_outcome(ctx, outcome),
            GeneralProphet::Median(s) => s.on_outcome(ctx, outcome),
        }
    }
}

pub fn general_prophet(laws: &[Law], rng: &mut dyn RngCore) -> Result<GeneralProphet> {
    Ok(TailGroupProfile::new(laws.to_vec())?.strategy(rng))
}

/// One sample per option as the only knowledge: the largest sample serves either as
/// the hint of the arbitrary-order strategy or as a single threshold.
pub fn single_sample_prophet(samples: &[f64], rng: &mut dyn RngCore) -> Result<Box<dyn Strategy>> {
    if samples.is_empty() {
        return Err(Error::validation(
            "single-sample strategy needs at least one sample",
        ));
    }
    if let Some(bad) = samples.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::validation(format!(
            "samples must be finite and nonnegative, got {bad}"
        )));
    }
    let hint = samples.iter().copied().fold(0.0, f64::max);
    if rng.random::<bool>() {
        Ok(Box::new(arbitrary_order_hinted(hint, samples.len(), rng)?))
    } else {
        Ok(Box::new(SingleThreshold::new(hint)))
    }
}
