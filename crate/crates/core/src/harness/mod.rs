//! Seeded Monte Carlo experiments.
//!
//! An [`ExperimentConfig`] names a strategy, an instance family and a trial count.
//! Trial `t` draws everything (instance, arrival order, samples, strategy coins) from
//! [`trial_rng`]`(seed, t)`, so results do not depend on the number of worker threads.
//! Aggregates use fixed-shape pairwise sums over trial-ordered vectors.

pub mod report;
pub mod spec;
pub mod verify;

use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{Distribution, Law};
use crate::engine::{play_with, GameConfig, Information, Strategy};
use crate::error::{Error, Result};
use crate::instances::{
    power_count_vector, power_counts, shuffled, truncated_exponential_cap, GeometricOrderStream,
    Instance, OrderModel,
};
use crate::prophet::{single_sample_prophet, IidPlan, SingleThreshold, TailGroupProfile};
use crate::rng::{fork, trial_rng, SimRng};
use crate::secretary::{
    arbitrary_order_hinted, arbitrary_order_levels, baseline_uniform, gap_algorithm, gap_levels,
    hinted_random_order, no_info_random_order, optimum_info_random_order, random_order_levels,
    warmup_full_info,
};

pub use report::{Report, SweepRow, SweepTable};
pub use spec::{InstanceSpec, Regime, StrategySpec};

pub const DEFAULT_TRIALS: usize = 10_000;

/// Output file and format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Arrival order applied on top of an instance family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderOverride {
    /// Uniformly random permutation per trial.
    Uniform,
    /// The order as listed or generated.
    Fixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub strategy: StrategySpec,
    pub instance: InstanceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderOverride>,
    /// Must match the strategy's regime when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub information: Option<Regime>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default, alias = "master_seed")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_cap: Option<usize>,
    /// Worker threads; `None` uses the global pool.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    /// Size parameters for a sweep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
    /// Record wall time in reports; off by default so reports are reproducible.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub timing: bool,
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

impl ExperimentConfig {
    pub fn new(strategy: StrategySpec, instance: InstanceSpec) -> ExperimentConfig {
        ExperimentConfig {
            strategy,
            instance,
            order: None,
            information: None,
            trials: DEFAULT_TRIALS,
            seed: 0,
            test_cap: None,
            workers: None,
            sizes: None,
            output: None,
            timing: false,
        }
    }

    pub fn parse(strategy: &str, instance: &str) -> Result<ExperimentConfig> {
        Ok(Self::new(strategy.parse()?, instance.parse()?))
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_order(mut self, order: OrderOverride) -> Self {
        self.order = Some(order);
        self
    }

    /// Read a JSON or TOML (by extension) configuration file.
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let is_toml = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("toml"));
        if is_toml {
            Self::from_toml(&text)
        } else {
            Self::from_json(&text)
        }
    }

    pub fn from_json(text: &str) -> Result<ExperimentConfig> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_toml(text: &str) -> Result<ExperimentConfig> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| {
                    let before = &text[..s.start.min(text.len())];
                    let line = before.matches('\n').count() + 1;
                    let column = before.rfind('\n').map_or(s.start, |nl| s.start - nl - 1) + 1;
                    (line, column)
                })
                .unwrap_or((1, 1));
            Error::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }
}

/// How values of one trial are produced.
#[derive(Debug, Clone)]
enum Model {
    Iid {
        law: Law,
        n: usize,
    },
    Independent {
        laws: Arc<Vec<Law>>,
    },
    Multiset {
        values: Arc<Vec<f64>>,
        uniform: bool,
        top: f64,
    },
    Geometric {
        k: u32,
    },
}

impl Model {
    fn build(spec: &InstanceSpec, order: Option<OrderOverride>) -> Result<Model> {
        let uniform_default = |default: bool| match order {
            Some(OrderOverride::Uniform) => true,
            Some(OrderOverride::Fixed) => false,
            None => default,
        };
        let multiset = |values: Vec<f64>, uniform: bool| -> Model {
            let top = values.iter().copied().fold(0.0, f64::max);
            Model::Multiset {
                values: Arc::new(values),
                uniform,
                top,
            }
        };
        Ok(match spec {
            InstanceSpec::Iid { law, n } => Model::Iid {
                law: law.clone(),
                n: *n,
            },
            InstanceSpec::TruncExp { n } => Model::Iid {
                law: Law::truncated_exponential(truncated_exponential_cap(*n))?,
                n: *n,
            },
            InstanceSpec::Laws(laws) => {
                if laws.is_empty() {
                    return Err(Error::config("empty list of laws"));
                }
                Model::Independent {
                    laws: Arc::new(laws.clone()),
                }
            }
            InstanceSpec::Mixed { n } => Model::Independent {
                laws: Arc::new(mixed_laws(*n)?),
            },
            InstanceSpec::Values(values) => {
                let inst = Instance::fixed(values.clone())?;
                multiset(inst.values, uniform_default(false))
            }
            InstanceSpec::Powers { k, base } => {
                multiset(power_counts(*k, *base)?.values, uniform_default(true))
            }
            InstanceSpec::File(path) => {
                let inst = Instance::load(path)?;
                let uniform = uniform_default(inst.order == OrderModel::Uniform);
                multiset(inst.values, uniform)
            }
            InstanceSpec::Geometric { k } => {
                if order.is_some() {
                    return Err(Error::config("the geometric generator fixes its own order"));
                }
                power_count_vector(*k, 4)?;
                Model::Geometric { k: *k }
            }
        })
    }

    fn n(&self) -> usize {
        match self {
            Model::Iid { n, .. } => *n,
            Model::Independent { laws } => laws.len(),
            Model::Multiset { values, .. } => values.len(),
            Model::Geometric { k } => power_count_vector(*k, 4)
                .map(|v| v.iter().sum::<u64>() as usize)
                .unwrap_or(0),
        }
    }

    /// Laws known to prophet strategies.
    fn laws(&self) -> Option<Vec<Law>> {
        match self {
            Model::Iid { law, n, .. } => Some(vec![law.clone(); *n]),
            Model::Independent { laws } => Some(laws.as_ref().clone()),
            _ => None,
        }
    }

    fn iid_law(&self) -> Option<&Law> {
        match self {
            Model::Iid { law, .. } => Some(law),
            Model::Independent { laws } if laws.windows(2).all(|w| w[0] == w[1]) => laws.first(),
            _ => None,
        }
    }

    fn fixed_multiset(&self) -> Option<Vec<f64>> {
        match self {
            Model::Multiset { values, .. } => Some(values.as_ref().clone()),
            Model::Geometric { k } => {
                let counts = power_count_vector(*k, 4).ok()?;
                Some(
                    counts
                        .iter()
                        .enumerate()
                        .flat_map(|(j, &c)| std::iter::repeat_n(j as f64, c as usize))
                        .collect(),
                )
            }
            _ => None,
        }
    }
}

/// `ceil(n/2)` laws `exp(1)` then `floor(n/2)` laws `uniform(0, 2)`.
pub fn mixed_laws(n: usize) -> Result<Vec<Law>> {
    if n == 0 {
        return Err(Error::validation("n must be at least 1"));
    }
    let exp = Law::exponential(1.0)?;
    let uni = Law::uniform(0.0, 2.0)?;
    Ok((0..n)
        .map(|i| {
            if i < n.div_ceil(2) {
                exp.clone()
            } else {
                uni.clone()
            }
        })
        .collect())
}

/// Arrival sequence of one trial.
enum Arrival {
    Values(std::vec::IntoIter<f64>),
    Stream(Box<GeometricOrderStream<SimRng>>),
}

impl Iterator for Arrival {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        match self {
            Arrival::Values(v) => v.next(),
            Arrival::Stream(s) => s.next(),
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match self {
            Arrival::Values(v) => v.size_hint(),
            Arrival::Stream(s) => s.size_hint(),
        }
    }
}

impl ExactSizeIterator for Arrival {}

/// Strategy knowledge computed once per experiment.
#[derive(Debug, Clone)]
enum Prepared {
    Threshold(f64),
    Iid(Arc<IidPlan>),
    General(Arc<TailGroupProfile>),
    Plain,
}

/// A validated experiment ready to run trials.
#[derive(Debug, Clone)]
pub struct Experiment {
    config: ExperimentConfig,
    model: Model,
    prepared: Prepared,
    regime: Regime,
    laws: Option<Arc<Vec<Law>>>,
    shared_full: Arc<OnceLock<Information>>,
    n: usize,
}

/// Outcome of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub score: f64,
    /// Largest value of the trial's instance.
    pub max: f64,
    pub accepted: bool,
}

impl Experiment {
    pub fn new(config: ExperimentConfig) -> Result<Experiment> {
        if config.trials == 0 {
            return Err(Error::config("trials must be positive"));
        }
        if config.workers == Some(0) {
            return Err(Error::config("workers must be positive"));
        }
        let regime = config.strategy.regime();
        if let Some(given) = config.information {
            if given != regime {
                return Err(Error::config(format!(
                    "strategy {} needs information regime {regime}, configuration provides {given}",
                    config.strategy
                )));
            }
        }
        let model = Model::build(&config.instance, config.order)?;
        let n = model.n();
        if n == 0 {
            return Err(Error::config("instance has no options"));
        }
        let need_laws = matches!(regime, Regime::Laws | Regime::Samples);
        let laws = if need_laws {
            Some(Arc::new(model.laws().ok_or_else(|| {
                Error::config(format!(
                    "strategy {} needs known laws; instance {} has none",
                    config.strategy, config.instance
                ))
            })?))
        } else {
            None
        };
        let iid_plan = || -> Result<Arc<IidPlan>> {
            let law = model.iid_law().ok_or_else(|| {
                Error::config(format!(
                    "strategy {} needs an i.i.d. instance, got {}",
                    config.strategy, config.instance
                ))
            })?;
            Ok(Arc::new(IidPlan::new(law.clone(), n)?))
        };
        let prepared = match config.strategy {
            StrategySpec::Threshold(x) => Prepared::Threshold(x),
            StrategySpec::IidFirst | StrategySpec::IidSecond | StrategySpec::IidMix => {
                Prepared::Iid(iid_plan()?)
            }
            StrategySpec::IidRefined => {
                if n < 3 {
                    return Err(Error::config("iid-refined needs n >= 3"));
                }
                Prepared::Iid(iid_plan()?)
            }
            StrategySpec::General => Prepared::General(Arc::new(TailGroupProfile::new(
                laws.as_ref().expect("checked above").as_ref().clone(),
            )?)),
            _ => Prepared::Plain,
        };
        Ok(Experiment {
            config,
            model,
            prepared,
            regime,
            laws,
            shared_full: Arc::new(OnceLock::new()),
            n,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Bucket count behind the strategy's guarantee, for secretary strategies.
    pub fn success_levels(&self) -> Option<usize> {
        let n = self.n;
        match self.config.strategy {
            StrategySpec::SecGap => Some(gap_levels(n)),
            StrategySpec::SecFull
            | StrategySpec::SecOpt
            | StrategySpec::SecHint(_)
            | StrategySpec::SecNoInfo => Some(random_order_levels(n)),
            StrategySpec::SecArb(_) => Some(arbitrary_order_levels(n)),
            _ => None,
        }
    }

    fn information(&self, values: Option<&[f64]>, top: f64) -> Result<Option<Information>> {
        Ok(match self.regime {
            Regime::Full => match values {
                Some(v) if !matches!(self.model, Model::Multiset { .. }) => {
                    Some(Information::full(v))
                }
                _ => None,
            },
            Regime::Optimum => Some(Information::Optimum(top)),
            Regime::Hint => Some(Information::Hint(match self.config.strategy {
                StrategySpec::SecHint(Some(x)) | StrategySpec::SecArb(Some(x)) => x,
                _ => return Err(Error::config("hint regime without a hint value")),
            })),
            Regime::Nothing | Regime::Laws | Regime::Samples => Some(Information::Nothing),
        })
    }

    fn shared_full(&self) -> Result<&Information> {
        if let Some(info) = self.shared_full.get() {
            return Ok(info);
        }
        let values = self
            .model
            .fixed_multiset()
            .ok_or_else(|| Error::config("no fixed multiset for full information"))?;
        Ok(self.shared_full.get_or_init(|| Information::full(&values)))
    }

    /// Build the strategy from the regime payload only.
    fn instantiate(
        &self,
        info: &Information,
        samples: Option<&[f64]>,
        rng: &mut dyn RngCore,
    ) -> Result<Box<dyn Strategy>> {
        let n = self.n;
        let mismatch = || {
            Error::config(format!(
                "strategy {} received the wrong information payload",
                self.config.strategy
            ))
        };
        Ok(match (&self.prepared, self.config.strategy, info) {
            (Prepared::Threshold(x), _, Information::Nothing) => Box::new(SingleThreshold::new(*x)),
            (Prepared::Iid(plan), StrategySpec::IidFirst, Information::Nothing) => {
                Box::new(plan.first())
            }
            (Prepared::Iid(plan), StrategySpec::IidSecond, Information::Nothing) => {
                Box::new(plan.second(rng))
            }
            (Prepared::Iid(plan), StrategySpec::IidMix, Information::Nothing) => {
                Box::new(plan.mixture(rng))
            }
            (Prepared::Iid(plan), StrategySpec::IidRefined, Information::Nothing) => {
                Box::new(plan.refined(rng)?)
            }
            (Prepared::General(profile), _, Information::Nothing) => {
                Box::new(profile.strategy(rng))
            }
            (_, StrategySpec::SingleSample, Information::Nothing) => {
                single_sample_prophet(samples.ok_or_else(mismatch)?, rng)?
            }
            (_, StrategySpec::SecFull, Information::Full(v)) => Box::new(warmup_full_info(v)?),
            (_, StrategySpec::SecGap, Information::Full(v)) => Box::new(gap_algorithm(v)?),
            (_, StrategySpec::SecOpt, Information::Optimum(a)) => {
                Box::new(optimum_info_random_order(*a, n, rng)?)
            }
            (_, StrategySpec::SecHint(None), Information::Optimum(h))
            | (_, StrategySpec::SecHint(Some(_)), Information::Hint(h)) => {
                Box::new(hinted_random_order(*h, n, rng)?)
            }
            (_, StrategySpec::SecArb(None), Information::Optimum(h))
            | (_, StrategySpec::SecArb(Some(_)), Information::Hint(h)) => {
                Box::new(arbitrary_order_hinted(*h, n, rng)?)
            }
            (_, StrategySpec::SecNoInfo, Information::Nothing) => {
                Box::new(no_info_random_order(n, rng))
            }
            (_, StrategySpec::BaselineUniform, Information::Nothing) => {
                Box::new(baseline_uniform(n, rng)?)
            }
            _ => return Err(mismatch()),
        })
    }

    /// Run trial `t`.
    pub fn trial(&self, t: u64) -> Result<TrialOutcome> {
        let mut rng = trial_rng(self.config.seed, t);
        let mut instance_rng = fork(&mut rng);
        let mut strategy_rng = fork(&mut rng);
        let mut sample_rng = fork(&mut rng);
        let (arrival, top, values) = match &self.model {
            Model::Iid { law, n, .. } => {
                let v: Vec<f64> = (0..*n).map(|_| law.sample(&mut instance_rng)).collect();
                let top = v.iter().copied().fold(0.0, f64::max);
                (None, top, Some(v))
            }
            Model::Independent { laws } => {
                let v: Vec<f64> = laws.iter().map(|l| l.sample(&mut instance_rng)).collect();
                let top = v.iter().copied().fold(0.0, f64::max);
                (None, top, Some(v))
            }
            Model::Multiset {
                values,
                uniform,
                top,
            } => {
                let v = if *uniform {
                    shuffled(values, &mut instance_rng)
                } else {
                    values.as_ref().clone()
                };
                (None, *top, Some(v))
            }
            Model::Geometric { k } => {
                let stream = GeometricOrderStream::new(*k, instance_rng)?;
                (Some(Arrival::Stream(Box::new(stream))), *k as f64, None)
            }
        };
        let owned = self.information(values.as_deref(), top)?;
        let info = match &owned {
            Some(i) => i,
            None => self.shared_full()?,
        };
        let samples: Option<Vec<f64>> = if self.regime == Regime::Samples {
            let laws = self.laws.as_ref().expect("laws checked at construction");
            Some(laws.iter().map(|l| l.sample(&mut sample_rng)).collect())
        } else {
            None
        };
        let mut strategy = self.instantiate(info, samples.as_deref(), &mut strategy_rng)?;
        let game = GameConfig {
            test_cap: self
                .config
                .test_cap
                .unwrap_or(GameConfig::default().test_cap),
        };
        let arrival = match (arrival, values) {
            (Some(a), _) => a,
            (None, Some(v)) => Arrival::Values(v.into_iter()),
            (None, None) => unreachable!("every model yields values or a stream"),
        };
        let result = play_with(arrival, info, strategy.as_mut(), &game)?;
        Ok(TrialOutcome {
            score: result.score,
            max: top,
            accepted: result.accepted_index.is_some(),
        })
    }

    /// Run every trial, in parallel, returning outcomes in trial order.
    pub fn trials(&self) -> Result<Vec<TrialOutcome>> {
        let go = || -> Result<Vec<TrialOutcome>> {
            (0..self.config.trials as u64)
                .into_par_iter()
                .map(|t| self.trial(t))
                .collect()
        };
        match self.config.workers {
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Resource(format!("thread pool: {e}")))?
                .install(go),
            None => go(),
        }
    }

    pub fn run(&self) -> Result<Report> {
        let start = Instant::now();
        let outcomes = self.trials()?;
        let mut report = Report::from_outcomes(self, &outcomes);
        if self.config.timing {
            report.wall_time_secs = Some(start.elapsed().as_secs_f64());
        }
        Ok(report)
    }
}

/// Run one experiment.
pub fn run(config: ExperimentConfig) -> Result<Report> {
    Experiment::new(config)?.run()
}

/// One report per size; failing cells are recorded and the sweep continues.
pub fn sweep(template: &ExperimentConfig, sizes: &[usize]) -> Result<SweepTable> {
    if sizes.is_empty() {
        return Err(Error::config("sweep needs at least one size"));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::config("sweep sizes must be strictly ascending"));
    }
    let rows = sizes
        .iter()
        .map(|&size| {
            let cell = template.instance.with_size(size).and_then(|instance| {
                run(ExperimentConfig {
                    instance,
                    sizes: None,
                    ..template.clone()
                })
            });
            match cell {
                Ok(report) => SweepRow::ok(size, report),
                Err(e) => SweepRow::failed(size, e.to_string()),
            }
        })
        .collect();
    Ok(SweepTable::new(template.clone(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(strategy: &str, instance: &str) -> ExperimentConfig {
        ExperimentConfig::parse(strategy, instance).unwrap()
    }

    #[test]
    fn deterministic_game() {
        let r = run(cfg("threshold:2", "values(1, 5)").with_trials(1)).unwrap();
        assert_eq!(r.mean_score, 3.0);
        assert_eq!(r.std_error, 0.0);
        assert_eq!(r.benchmark, 5.0);
    }

    #[test]
    fn same_config_same_bytes() {
        let c = cfg("iid-mix", "iid(exp(1), 64)")
            .with_trials(500)
            .with_seed(3);
        let a = serde_json::to_string(&run(c.clone()).unwrap()).unwrap();
        let b = serde_json::to_string(&run(c).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let mut c = cfg("sec-noinfo", "powers(5, 2)")
            .with_trials(300)
            .with_seed(8);
        c.workers = Some(1);
        let serial = Experiment::new(c.clone()).unwrap().trials().unwrap();
        c.workers = Some(4);
        let parallel = Experiment::new(c).unwrap().trials().unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn regime_firewall() {
        let regimes = [
            Regime::Nothing,
            Regime::Optimum,
            Regime::Hint,
            Regime::Full,
            Regime::Laws,
            Regime::Samples,
        ];
        for (strategy, instance) in [
            ("sec-full", "powers(3, 2)"),
            ("sec-gap", "powers(3, 2)"),
            ("sec-opt", "powers(3, 2)"),
            ("sec-hint:2", "powers(3, 2)"),
            ("sec-arb", "powers(3, 2)"),
            ("sec-noinfo", "powers(3, 2)"),
            ("iid-mix", "iid(exp(1), 8)"),
            ("single-sample", "mixed(8)"),
            ("threshold:1", "values(1, 2)"),
        ] {
            let base = cfg(strategy, instance).with_trials(10);
            let own = base.strategy.regime();
            for r in regimes {
                let mut c = base.clone();
                c.information = Some(r);
                let result = Experiment::new(c);
                if r == own {
                    assert!(result.is_ok(), "{strategy} under {r}");
                } else {
                    assert!(
                        matches!(result, Err(Error::Config(_))),
                        "{strategy} under {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn prophet_strategies_need_laws() {
        for s in ["iid-mix", "general", "single-sample"] {
            assert!(matches!(
                Experiment::new(cfg(s, "powers(3, 2)")),
                Err(Error::Config(_))
            ));
        }
        assert!(matches!(
            Experiment::new(cfg("iid-mix", "mixed(8)")),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn payload_mismatch_is_rejected_at_instantiation() {
        let e = Experiment::new(cfg("sec-full", "powers(3, 2)")).unwrap();
        let got = e.instantiate(&Information::Optimum(3.0), None, &mut crate::rng::seeded(0));
        assert!(matches!(got, Err(Error::Config(_))));
    }

    #[test]
    fn every_strategy_runs() {
        for (s, i) in [
            ("iid-first", "iid(exp(1), 16)"),
            ("iid-second", "iid(exp(1), 16)"),
            ("iid-mix", "iid(uniform(0,1), 16)"),
            ("iid-refined", "iid(exp(1), 16)"),
            ("general", "mixed(16)"),
            ("general", "laws(degenerate(1), degenerate(2), exp(1))"),
            ("single-sample", "mixed(16)"),
            ("threshold:1", "truncexp(16)"),
            ("sec-full", "powers(4, 2)"),
            ("sec-opt", "truncexp(32)"),
            ("sec-hint:2", "powers(4, 2)"),
            ("sec-hint", "powers(4, 2)"),
            ("sec-noinfo", "powers(4, 2)"),
            ("sec-arb", "geometric(3)"),
            ("sec-arb:3", "powers(4, 2)"),
            ("sec-gap", "geometric(3)"),
            ("sec-gap", "truncexp(32)"),
            ("baseline-uniform", "powers(4, 2)"),
        ] {
            let r = run(cfg(s, i).with_trials(200)).unwrap();
            assert!(
                r.mean_score >= 0.0 && r.mean_score <= r.benchmark + 1e-12,
                "{s} on {i}"
            );
        }
    }

    #[test]
    fn geometric_threshold_games_stop_early() {
        let r = run(cfg("threshold:9", "geometric(10)").with_trials(20)).unwrap();
        assert_eq!(r.benchmark, 10.0);
        assert!(r.mean_score <= 10.0);
    }

    #[test]
    fn sweep_rows() {
        let t = sweep(
            &cfg("iid-mix", "iid(exp(1), 8)").with_trials(200),
            &[16, 64],
        )
        .unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!(t.rows.iter().all(|r| r.error.is_none()));
        assert!(sweep(&cfg("iid-mix", "iid(exp(1), 8)"), &[64, 16]).is_err());
        let bad = sweep(
            &cfg("iid-refined", "iid(exp(1), 8)").with_trials(10),
            &[2, 8],
        )
        .unwrap();
        assert!(bad.rows[0].error.is_some());
        assert!(bad.rows[1].error.is_none());
    }

    #[test]
    fn config_files() {
        let json =
            r#"{"strategy": "sec-gap", "instance": "powers(4, 2)", "trials": 50, "seed": 7}"#;
        let c = ExperimentConfig::from_json(json).unwrap();
        assert_eq!(c.trials, 50);
        let toml =
            "strategy = \"sec-gap\"\ninstance = \"powers(4, 2)\"\ntrials = 50\nmaster_seed = 7\n";
        assert_eq!(ExperimentConfig::from_toml(toml).unwrap(), c);
        match ExperimentConfig::from_json("{\"strategy\": \"sec-gap\",\n \"bogus\": 1}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match ExperimentConfig::from_toml("strategy = \"nope\"\ninstance = \"powers(4, 2)\"\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
    }
}
