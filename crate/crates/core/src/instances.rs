//! Problem instances and arrival orders.
//!
//! An [`Instance`] holds the hidden values, how they arrive, and where they came from.
//! Generators cover i.i.d. draws, the power-count multisets used by the lower bounds,
//! the geometric-order stream whose arrival order is part of the instance, and the
//! truncated exponential secretary instance.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::RngCore;
use rand_distr::{Distribution as _, Exp1};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::distributions::{Distribution, Law};
use crate::error::{Error, Result};

/// Largest instance that generators will materialize.
pub const MAX_MATERIALIZED: u64 = 1 << 28;

/// Iteration guard for the geometric-order stream.
pub const GEOMETRIC_DRAW_CAP: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderModel {
    /// A fresh uniformly random permutation per trial.
    Uniform,
    /// Values arrive exactly as listed.
    Fixed,
    /// The generator's output order; never reshuffled.
    Generated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: Value,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(generator: &str, params: Value) -> Provenance {
        Provenance {
            generator: generator.to_string(),
            params,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub values: Vec<f64>,
    pub order: OrderModel,
    /// Largest value.
    pub benchmark: f64,
    pub provenance: Provenance,
}

impl Instance {
    pub fn new(values: Vec<f64>, order: OrderModel, provenance: Provenance) -> Result<Instance> {
        if values.is_empty() {
            return Err(Error::validation("an instance needs at least one value"));
        }
        if let Some(bad) = values.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::validation(format!(
                "instance values must be finite and nonnegative, got {bad}"
            )));
        }
        let benchmark = values.iter().copied().fold(0.0, f64::max);
        Ok(Instance {
            values,
            order,
            benchmark,
            provenance,
        })
    }

    /// Values listed in the given order.
    pub fn fixed(values: Vec<f64>) -> Result<Instance> {
        Instance::new(
            values,
            OrderModel::Fixed,
            Provenance::new("fixed", json!({})),
        )
    }

    pub fn with_seed(mut self, seed: u64) -> Instance {
        self.provenance.seed = Some(seed);
        self
    }

    pub fn with_order(mut self, order: OrderModel) -> Instance {
        self.order = order;
        self
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// The order in which values arrive in one trial.
    pub fn arrival(&self, rng: &mut dyn RngCore) -> Vec<f64> {
        let mut values = self.values.clone();
        if self.order == OrderModel::Uniform {
            values.shuffle(rng);
        }
        values
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let raw: Instance = serde_json::from_str(text)?;
        let checked = Instance::new(raw.values, raw.order, raw.provenance)?;
        if checked.benchmark != raw.benchmark {
            return Err(Error::validation(format!(
                "benchmark {} does not equal the largest value {}",
                raw.benchmark, checked.benchmark
            )));
        }
        Ok(checked)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Instance> {
        Instance::from_json(&std::fs::read_to_string(path)?)
    }
}

/// `n` independent draws from `law`, arriving in draw order.
pub fn iid_from(law: &Law, n: usize, rng: &mut dyn RngCore) -> Result<Instance> {
    if n == 0 {
        return Err(Error::validation("n must be at least 1"));
    }
    let values = (0..n).map(|_| law.sample(rng)).collect();
    Instance::new(
        values,
        OrderModel::Fixed,
        Provenance::new("iid", json!({ "law": law.to_string(), "n": n })),
    )
}

/// Multiplicity of each level `0..=k`: level `j` appears `base^(k-j)` times.
pub fn power_count_vector(k: u32, base: u64) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::validation("k must be at least 1"));
    }
    if base < 2 {
        return Err(Error::validation(format!(
            "base must be at least 2, got {base}"
        )));
    }
    let mut counts = Vec::with_capacity(k as usize + 1);
    let mut total: u64 = 0;
    for j in 0..=k {
        let c = base
            .checked_pow(k - j)
            .ok_or_else(|| Error::validation(format!("{base}^{} overflows", k - j)))?;
        total = total
            .checked_add(c)
            .ok_or_else(|| Error::validation("instance size overflows"))?;
        counts.push(c);
    }
    Ok(counts)
}

/// Size of the power-count multiset.
pub fn power_count_size(k: u32, base: u64) -> Result<u64> {
    Ok(power_count_vector(k, base)?.iter().sum())
}

/// The multiset where value `j` appears `base^(k-j)` times, sorted ascending,
/// arriving in uniformly random order.
pub fn power_counts(k: u32, base: u64) -> Result<Instance> {
    let counts = power_count_vector(k, base)?;
    let total: u64 = counts.iter().sum();
    if total > MAX_MATERIALIZED {
        return Err(Error::Resource(format!(
            "power-count instance with {total} values exceeds {MAX_MATERIALIZED}"
        )));
    }
    let mut values = Vec::with_capacity(total as usize);
    for (j, &c) in counts.iter().enumerate() {
        values.extend(std::iter::repeat_n(j as f64, c as usize));
    }
    Instance::new(
        values,
        OrderModel::Uniform,
        Provenance::new("power", json!({ "k": k, "base": base })),
    )
}

/// Lazily generated geometric-order sequence over levels `0..=k`.
///
/// Each step draws `j` with `P[j] = 2^-(j+1)` and emits it iff `j <= k` and level `j`
/// has been emitted fewer than `4^(k-j)` times. The multiset of the full output is
/// `power_counts(k, 4)`; given a prefix, the next value is `j` with probability
/// proportional to `2^-j` over levels that still have copies left.
#[derive(Debug, Clone)]
pub struct GeometricOrderStream<R> {
    remaining: Vec<u64>,
    left: u64,
    draws: u64,
    failed: bool,
    rng: R,
}

impl<R: RngCore> GeometricOrderStream<R> {
    pub fn new(k: u32, rng: R) -> Result<Self> {
        let remaining = power_count_vector(k, 4)?;
        let left = remaining.iter().sum();
        if left > usize::MAX as u64 {
            return Err(Error::Resource("stream longer than usize".into()));
        }
        Ok(GeometricOrderStream {
            remaining,
            left,
            draws: 0,
            failed: false,
            rng,
        })
    }

    pub fn k(&self) -> u32 {
        self.remaining.len() as u32 - 1
    }

    /// Copies still to be emitted at each level.
    pub fn remaining(&self) -> &[u64] {
        &self.remaining
    }

    /// Set once the draw cap was hit; the stream then ends early.
    pub fn error(&self) -> Option<Error> {
        self.failed.then(|| {
            Error::Numeric(format!(
                "geometric-order stream exceeded {GEOMETRIC_DRAW_CAP} draws"
            ))
        })
    }

    fn geometric(&mut self) -> usize {
        (self.rng.next_u64().trailing_zeros() as usize).min(63)
    }
}

impl<R: RngCore> Iterator for GeometricOrderStream<R> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if self.left == 0 || self.failed {
            return None;
        }
        loop {
            if self.draws >= GEOMETRIC_DRAW_CAP {
                self.failed = true;
                return None;
            }
            self.draws += 1;
            let j = self.geometric();
            if j < self.remaining.len() && self.remaining[j] > 0 {
                self.remaining[j] -= 1;
                self.left -= 1;
                return Some(j as f64);
            }
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = if self.failed { 0 } else { self.left as usize };
        (left, Some(left))
    }
}

impl<R: RngCore> ExactSizeIterator for GeometricOrderStream<R> {}

/// Materialized geometric-order instance.
pub fn nonuniform_geometric_order(k: u32, rng: &mut dyn RngCore) -> Result<Instance> {
    let total = power_count_size(k, 4)?;
    if total > MAX_MATERIALIZED {
        return Err(Error::Resource(format!(
            "geometric-order instance with {total} values exceeds {MAX_MATERIALIZED}"
        )));
    }
    let mut stream = GeometricOrderStream::new(k, rng)?;
    let values: Vec<f64> = stream.by_ref().collect();
    if let Some(e) = stream.error() {
        return Err(e);
    }
    Instance::new(
        values,
        OrderModel::Generated,
        Provenance::new("geometric_order", json!({ "k": k })),
    )
}

/// `n` draws of `min(Exp(1), ln(n)/2)` in uniformly random order.
pub fn truncated_exponential_secretary(n: usize, rng: &mut dyn RngCore) -> Result<Instance> {
    if n < 2 {
        return Err(Error::validation("n must be at least 2"));
    }
    let cap = truncated_exponential_cap(n);
    let values = (0..n)
        .map(|_| {
            let e: f64 = Exp1.sample(rng);
            e.min(cap)
        })
        .collect();
    Instance::new(
        values,
        OrderModel::Uniform,
        Provenance::new("truncexp", json!({ "n": n, "cap": cap })),
    )
}

pub fn truncated_exponential_cap(n: usize) -> f64 {
    (n as f64).ln() / 2.0
}

/// Uniformly random permutation of `values`.
pub fn shuffled(values: &[f64], rng: &mut dyn RngCore) -> Vec<f64> {
    let mut v = values.to_vec();
    v.shuffle(rng);
    v
}
