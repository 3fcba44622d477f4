//! The acceptance suite.
//!
//! Nine criteria, each run on its own thread under a timeout. `fast` divides every
//! Monte Carlo trial count by 10 and widens the absolute slacks of criteria 5 and 8
//! by `sqrt(10)`; comparisons that carry no slack stay strict.

use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::RngCore;
use serde::Serialize;
use serde_json::{json, Value};

use super::{run, ExperimentConfig, InstanceSpec, OrderOverride, Report, StrategySpec};
use crate::bit_sampling::{
    check_suffix_bound, commit_probability_exact, min_win_prob_exhaustive_with,
};
use crate::distributions::{max_law_upper_quantile, Distribution};
use crate::error::{Error, Result};
use crate::harness::mixed_laws;
use crate::oracle::{
    commit_observe_bound, commit_observe_optimum, expected_max_exponential_check, harmonic_f64,
    optimal_online_dp, risky_win_probability_check, to_f64,
};
use crate::rng::{splitmix64, trial_rng};
use crate::secretary::{arbitrary_order_levels, random_order_levels};
use crate::stats::MeanSe;

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(300);
pub const DEFAULT_SEED: u64 = 20_240_601;
pub const CRITERIA: [(u8, &str); 9] = [
    (1, "exponential max identity"),
    (2, "i.i.d. prophet ceiling"),
    (3, "bit sampling exact bound"),
    (4, "commit/observe equality"),
    (5, "gap algorithm success"),
    (6, "secretary ratios"),
    (7, "lower-bound ceilings"),
    (8, "single-sample prophet"),
    (9, "oracle dominance"),
];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub fast: bool,
    pub seed: u64,
    pub timeout: Duration,
    /// Criterion ids to run; empty runs all.
    pub only: Vec<u8>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            fast: false,
            seed: DEFAULT_SEED,
            timeout: DEFAULT_TIMEOUT,
            only: Vec::new(),
        }
    }
}

impl VerifyOptions {
    fn trials(&self, full: usize) -> usize {
        if self.fast {
            (full / 10).max(1)
        } else {
            full
        }
    }

    fn slack(&self, full: f64) -> f64 {
        if self.fast {
            full * 10f64.sqrt()
        } else {
            full
        }
    }

    fn seed(&self, id: u8, part: u64) -> u64 {
        splitmix64(self.seed ^ ((id as u64) << 32) ^ part)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
    pub elapsed_secs: f64,
}

impl CriterionResult {
    /// `[PASS] 3 bit sampling exact bound: ...`
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {}: {} ({:.1}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.summary,
            self.elapsed_secs
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub fast: bool,
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
}

struct Outcome {
    passed: bool,
    summary: String,
    details: Value,
}

/// Run the selected criteria in id order.
pub fn verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    if let Some(bad) = opts.only.iter().find(|&&id| !(1..=9).contains(&id)) {
        return Err(Error::config(format!("no criterion {bad}; ids are 1..=9")));
    }
    let criteria = CRITERIA
        .iter()
        .filter(|(id, _)| opts.only.is_empty() || opts.only.contains(id))
        .map(|&(id, name)| run_criterion(id, name, opts))
        .collect::<Vec<_>>();
    Ok(VerifyReport {
        passed: criteria.iter().all(|c| c.passed),
        fast: opts.fast,
        seed: opts.seed,
        criteria,
    })
}

/// Run one criterion by id under the timeout.
pub fn run_criterion(id: u8, name: &str, opts: &VerifyOptions) -> CriterionResult {
    let start = Instant::now();
    let (tx, rx) = mpsc::channel();
    let thread_opts = opts.clone();
    let spawned = thread::Builder::new()
        .name(format!("criterion-{id}"))
        .spawn(move || {
            let _ = tx.send(dispatch(id, &thread_opts));
        });
    let result = match spawned {
        Err(e) => Err(Error::Resource(format!(
            "cannot spawn criterion thread: {e}"
        ))),
        Ok(_) => match rx.recv_timeout(opts.timeout) {
            Ok(r) => r,
            Err(mpsc::RecvTimeoutError::Timeout) => Err(Error::Resource(format!(
                "timed out after {}s",
                opts.timeout.as_secs()
            ))),
            Err(mpsc::RecvTimeoutError::Disconnected) => {
                Err(Error::Assertion("criterion thread panicked".into()))
            }
        },
    };
    let (passed, summary, details) = match result {
        Ok(o) => (o.passed, o.summary, o.details),
        Err(e) => (false, format!("error: {e}"), Value::Null),
    };
    CriterionResult {
        id,
        name: name.to_string(),
        passed,
        summary,
        details,
        elapsed_secs: start.elapsed().as_secs_f64(),
    }
}

fn dispatch(id: u8, opts: &VerifyOptions) -> Result<Outcome> {
    match id {
        1 => exponential_max(opts),
        2 => iid_ceiling(opts),
        3 => bit_sampling(opts),
        4 => commit_observe(),
        5 => gap_success(opts),
        6 => secretary_ratios(opts),
        7 => lower_bound_ceilings(opts),
        8 => single_sample(opts),
        9 => oracle_dominance(opts),
        _ => Err(Error::config(format!("no criterion {id}"))),
    }
}

fn experiment(
    strategy: StrategySpec,
    instance: InstanceSpec,
    trials: usize,
    seed: u64,
) -> Result<Report> {
    let mut c = ExperimentConfig::new(strategy, instance);
    c.trials = trials;
    c.seed = seed;
    run(c)
}

fn cell(r: &Report) -> Value {
    json!({
        "strategy": r.strategy,
        "n": r.n,
        "trials": r.trials,
        "mean": r.mean_score,
        "se": r.std_error,
        "benchmark": r.benchmark,
        "ratio": r.ratio,
        "conditional": r.conditional_score,
        "conditional_se": r.conditional_se,
        "success": r.success_rate,
    })
}

fn exponential_max(opts: &VerifyOptions) -> Result<Outcome> {
    let trials = opts.trials(100_000).max(10_000);
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, n) in [10usize, 100, 10_000].into_iter().enumerate() {
        let c = expected_max_exponential_check(n, trials, opts.seed(1, i as u64))?;
        worst = worst.max(c.z.abs());
        rows.push(serde_json::to_value(&c).map_err(|e| Error::Io(e.to_string()))?);
    }
    let passed = worst <= 4.0;
    Ok(Outcome {
        passed,
        summary: format!("max |z| = {worst:.2} (limit 4) for n in {{10, 100, 10^4}}"),
        details: Value::Array(rows),
    })
}

/// Conditional score, mean floor and refined ratio checks for the i.i.d. prophet.
fn iid_ceiling(opts: &VerifyOptions) -> Result<Outcome> {
    let trials = opts.trials(100_000);
    let exp1 = crate::distributions::Law::exponential(1.0)?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut refined_ratio = None;
    for (i, n) in [256usize, 1024, 4096].into_iter().enumerate() {
        let floor = harmonic_f64(n)? / (3.0 * (n as f64).ln());
        for (s, strategy) in [StrategySpec::IidMix, StrategySpec::IidRefined]
            .into_iter()
            .enumerate()
        {
            let r = experiment(
                strategy,
                InstanceSpec::Iid {
                    law: exp1.clone(),
                    n,
                },
                trials,
                opts.seed(2, (i * 2 + s) as u64),
            )?;
            let cond = r.conditional_score.unwrap_or(0.0);
            let cond_se = r.conditional_se.unwrap_or(0.0);
            if cond > 1.0 + 3.0 * cond_se {
                failures.push(format!(
                    "{strategy} n={n}: conditional {cond:.4} > 1 + 3*{cond_se:.4}"
                ));
            }
            if r.mean_score < floor {
                failures.push(format!(
                    "{strategy} n={n}: mean {:.4} < {floor:.4}",
                    r.mean_score
                ));
            }
            if strategy == StrategySpec::IidRefined && n == 4096 {
                let limit = 1.35 * std::f64::consts::E * (n as f64).ln();
                let ratio = r.ratio.unwrap_or(f64::INFINITY);
                refined_ratio = Some(ratio);
                if ratio > limit {
                    failures.push(format!("iid-refined n=4096: ratio {ratio:.3} > {limit:.3}"));
                }
            }
            let mut row = cell(&r);
            row["floor"] = json!(floor);
            rows.push(row);
        }
    }
    let summary = if failures.is_empty() {
        format!(
            "conditional <= 1 + 3SE, mean >= H_n/(3 ln n) for n in {{256, 1024, 4096}}; refined ratio {:.2} at 4096",
            refined_ratio.unwrap_or(f64::NAN)
        )
    } else {
        failures.join("; ")
    };
    Ok(Outcome {
        passed: failures.is_empty(),
        summary,
        details: Value::Array(rows),
    })
}

pub const BIT_SAMPLING_LENGTH: usize = 14;

fn bit_sampling(_opts: &VerifyOptions) -> Result<Outcome> {
    bit_sampling_with(&commit_probability_exact)
}

/// Criterion 3 with an arbitrary commit rule; used to check that a tampered rule fails.
pub fn bit_sampling_criterion_with(rule: &dyn Fn(i64) -> BigRational) -> Result<(bool, String)> {
    let o = bit_sampling_with(rule)?;
    Ok((o.passed, o.summary))
}

fn bit_sampling_with(rule: &dyn Fn(i64) -> BigRational) -> Result<Outcome> {
    let min = min_win_prob_exhaustive_with(BIT_SAMPLING_LENGTH, rule)?;
    let sixth = BigRational::new(1.into(), 6.into());
    let suffix = check_suffix_bound(BIT_SAMPLING_LENGTH)?;
    let passed = min.minimum >= sixth && suffix.violations.is_empty();
    Ok(Outcome {
        passed,
        summary: format!(
            "exact minimum {} ({:.6}) over {} sequences vs 1/6; {} suffix states, {} violations",
            min.minimum,
            to_f64(&min.minimum),
            min.sequences,
            suffix.states_checked,
            suffix.violations.len()
        ),
        details: json!({
            "minimum": min.minimum.to_string(),
            "witness": min.witness.to_string(),
            "sequences": min.sequences,
            "suffix_states": suffix.states_checked,
            "suffix_violations": suffix.violations.len(),
            "suffix_min_slack": suffix.min_slack.to_string(),
        }),
    })
}

fn commit_observe() -> Result<Outcome> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 1..=5u32 {
        for delta in 1..=k {
            for theta in 0..=k - delta {
                checked += 1;
                let bound = commit_observe_bound(k, theta, delta);
                let dp = commit_observe_optimum(k, theta, delta);
                match (bound, dp) {
                    (Ok(b), Ok(v)) if v == b.bound && b.bound <= b.cap => {}
                    (b, v) => failures.push(format!(
                        "k={k} theta={theta} delta={delta}: {:?} / {:?}",
                        b.map(|b| b.bound.to_string()),
                        v.map(|v| v.to_string())
                    )),
                }
            }
        }
    }
    Ok(Outcome {
        passed: failures.is_empty(),
        summary: if failures.is_empty() {
            format!("optimum = G/(B+G) <= 4*2^-delta exactly on {checked} triples with k <= 5")
        } else {
            failures.join("; ")
        },
        details: json!({ "triples": checked, "failures": failures }),
    })
}

fn gap_success(opts: &VerifyOptions) -> Result<Outcome> {
    let trials = opts.trials(10_000);
    let target = 1.0 - (-1.0f64).exp() - opts.slack(0.02);
    let mut rows = Vec::new();
    let mut worst = f64::INFINITY;
    for k in [8u32, 10] {
        let r = experiment(
            StrategySpec::SecGap,
            InstanceSpec::Powers { k, base: 2 },
            trials,
            opts.seed(5, k as u64),
        )?;
        let rate = r.success_rate.unwrap_or(0.0);
        worst = worst.min(rate);
        let mut row = cell(&r);
        row["k_alg"] = json!(r.success_levels);
        rows.push(row);
    }
    Ok(Outcome {
        passed: worst >= target,
        summary: format!("min success {worst:.4} vs {target:.4} on powers(8|10, 2)"),
        details: Value::Array(rows),
    })
}

/// Values of `powers(k, 2)` in the three adversarial orders.
pub fn adversarial_orders(values: &[f64]) -> Vec<(&'static str, Vec<f64>)> {
    let mut asc = values.to_vec();
    asc.sort_by(f64::total_cmp);
    let desc: Vec<f64> = asc.iter().rev().copied().collect();
    let mut alternating = Vec::with_capacity(asc.len());
    let (mut lo, mut hi) = (0usize, asc.len());
    while lo < hi {
        alternating.push(asc[lo]);
        lo += 1;
        if lo < hi {
            hi -= 1;
            alternating.push(asc[hi]);
        }
    }
    vec![
        ("good-last", asc),
        ("good-first", desc),
        ("alternating", alternating),
    ]
}

fn secretary_ratios(opts: &VerifyOptions) -> Result<Outcome> {
    let trials = opts.trials(10_000);
    let k_inst = 10u32;
    let inst = crate::instances::power_counts(k_inst, 2)?;
    let n = inst.n();
    let top = inst.benchmark;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let floor = top / (4.0 * random_order_levels(n) as f64);
    for (i, strategy) in [StrategySpec::SecOpt, StrategySpec::SecNoInfo]
        .into_iter()
        .enumerate()
    {
        let r = experiment(
            strategy,
            InstanceSpec::Powers { k: k_inst, base: 2 },
            trials,
            opts.seed(6, i as u64),
        )?;
        if r.mean_score < floor {
            failures.push(format!("{strategy}: mean {:.4} < {floor:.4}", r.mean_score));
        }
        let mut row = cell(&r);
        row["floor"] = json!(floor);
        rows.push(row);
    }
    let arb_floor = top / (24.0 * arbitrary_order_levels(n) as f64);
    let mut worst = f64::INFINITY;
    for (i, (name, order)) in adversarial_orders(&inst.values).into_iter().enumerate() {
        let mut c = ExperimentConfig::new(StrategySpec::SecArb(None), InstanceSpec::Values(order));
        c.order = Some(OrderOverride::Fixed);
        c.trials = trials;
        c.seed = opts.seed(6, 10 + i as u64);
        let r = run(c)?;
        worst = worst.min(r.mean_score);
        let mut row = cell(&r);
        row["order"] = json!(name);
        row["floor"] = json!(arb_floor);
        rows.push(row);
    }
    if worst < arb_floor {
        failures.push(format!(
            "sec-arb: worst-order mean {worst:.4} < {arb_floor:.4}"
        ));
    }
    Ok(Outcome {
        passed: failures.is_empty(),
        summary: if failures.is_empty() {
            format!(
                "sec-opt, sec-noinfo >= {floor:.4}; sec-arb worst-of-3 {worst:.4} >= {arb_floor:.4}"
            )
        } else {
            failures.join("; ")
        },
        details: Value::Array(rows),
    })
}

pub const RISKY_PROBE_K: u32 = 10;
pub const RISKY_PROBE_TRIALS: usize = 50;

fn lower_bound_ceilings(opts: &VerifyOptions) -> Result<Outcome> {
    let trials = opts.trials(10_000);
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    let mut worst_threshold: f64 = 0.0;
    for theta in 0..10u32 {
        let r = experiment(
            StrategySpec::Threshold(theta as f64),
            InstanceSpec::Geometric { k: 10 },
            trials,
            opts.seed(7, theta as u64),
        )?;
        worst_threshold = worst_threshold.max(r.mean_score);
        if r.mean_score > 4.0 {
            failures.push(format!(
                "threshold:{theta} on geometric(10): mean {:.4} > 4",
                r.mean_score
            ));
        }
        rows.push(cell(&r));
    }
    let mut probes = Vec::new();
    for delta in [3u32, 4, 5] {
        for theta in [0, RISKY_PROBE_K - delta] {
            let p = risky_win_probability_check(
                RISKY_PROBE_K,
                theta,
                delta,
                RISKY_PROBE_TRIALS,
                opts.seed(7, 100 + (delta * 16 + theta) as u64),
            )?;
            if !p.passed {
                failures.push(format!(
                    "risky probe theta={theta} delta={delta}: {:.4} > {:.4} + 3*{:.4}",
                    p.estimate, p.bound, p.se
                ));
            }
            probes.push(serde_json::to_value(&p).map_err(|e| Error::Io(e.to_string()))?);
        }
    }
    let n = 10_000usize;
    let mut worst_secretary: f64 = 0.0;
    let mut benchmark = f64::INFINITY;
    for (i, strategy) in StrategySpec::secretary_catalog().into_iter().enumerate() {
        let r = experiment(
            strategy,
            InstanceSpec::TruncExp { n },
            trials,
            opts.seed(7, 200 + i as u64),
        )?;
        worst_secretary = worst_secretary.max(r.mean_score);
        benchmark = benchmark.min(r.benchmark);
        if r.mean_score > 1.5 {
            failures.push(format!(
                "{strategy} on truncexp({n}): mean {:.4} > 1.5",
                r.mean_score
            ));
        }
        rows.push(cell(&r));
    }
    let bench_floor = 0.99 * (n as f64).ln() / 2.0;
    if benchmark < bench_floor {
        failures.push(format!(
            "truncexp({n}): E[max] {benchmark:.4} < {bench_floor:.4}"
        ));
    }
    Ok(Outcome {
        passed: failures.is_empty(),
        summary: if failures.is_empty() {
            format!(
                "threshold means <= {worst_threshold:.3} (<= 4); risky probes pass; secretary means <= {worst_secretary:.3} (<= 1.5), E[max] {benchmark:.3} >= {bench_floor:.3}"
            )
        } else {
            failures.join("; ")
        },
        details: json!({ "experiments": rows, "risky_probes": probes }),
    })
}

fn single_sample(opts: &VerifyOptions) -> Result<Outcome> {
    let trials = opts.trials(100_000);
    let slack = opts.slack(0.01);
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for (i, n) in [256usize, 1024].into_iter().enumerate() {
        let r = experiment(
            StrategySpec::SingleSample,
            InstanceSpec::Mixed { n },
            trials,
            opts.seed(8, i as u64),
        )?;
        let floor = r.benchmark / (6.0 * (n as f64).ln());
        if r.mean_score < floor {
            failures.push(format!("n={n}: mean {:.4} < {floor:.4}", r.mean_score));
        }
        let laws = mixed_laws(n)?;
        let a = max_law_upper_quantile(&laws, 2.0 / 3.0)?;
        let b = max_law_upper_quantile(&laws, 1.0 / 3.0)?;
        let seed = opts.seed(8, 10 + i as u64);
        let hits: Vec<bool> = (0..trials as u64)
            .map(|t| {
                let mut rng = trial_rng(seed, t);
                let sample_max = laws
                    .iter()
                    .map(|l| l.sample(&mut rng as &mut dyn RngCore))
                    .fold(0.0, f64::max);
                (a..=b).contains(&sample_max)
            })
            .collect();
        let window = MeanSe::of_bools(hits);
        if window.mean < 1.0 / 3.0 - slack {
            failures.push(format!(
                "n={n}: P[sample max in window] {:.4} < 1/3 - {slack:.4}",
                window.mean
            ));
        }
        let mut row = cell(&r);
        row["floor"] = json!(floor);
        row["window"] = json!([a, b]);
        row["window_rate"] = json!(window.mean);
        row["window_se"] = json!(window.se);
        rows.push(row);
    }
    Ok(Outcome {
        passed: failures.is_empty(),
        summary: if failures.is_empty() {
            format!(
                "mean >= E[max]/(6 ln n) and window rate >= 1/3 - {slack:.3} for n in {{256, 1024}}"
            )
        } else {
            failures.join("; ")
        },
        details: Value::Array(rows),
    })
}

/// Small integer instances checked against the exact online optimum.
pub fn dominance_grid() -> Vec<Vec<u32>> {
    let mut grid = Vec::new();
    let base = [0u32, 1, 2, 4];
    fn extend(
        base: &[u32],
        start: usize,
        cur: &mut Vec<u32>,
        max_len: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for i in start..base.len() {
            cur.push(base[i]);
            extend(base, i, cur, max_len, out);
            cur.pop();
        }
    }
    extend(&base, 0, &mut Vec::new(), 4, &mut grid);
    grid.extend([
        vec![1, 2, 3, 4, 5],
        vec![0, 0, 0, 0, 0, 1, 5],
        vec![1, 1, 1, 1, 1, 1, 1, 5],
        vec![2, 2, 2, 2, 3, 3, 3, 5],
        vec![0, 1, 2, 3, 4, 5, 5, 5],
        vec![0, 0, 0, 0, 0, 0, 0, 3],
    ]);
    grid
}

fn oracle_dominance(opts: &VerifyOptions) -> Result<Outcome> {
    let trials = opts.trials(10_000).max(2);
    let mut failures = Vec::new();
    let hand = [
        (vec![0u32, 2], BigRational::from_integer(2.into())),
        (vec![1, 2], BigRational::new(3.into(), 2.into())),
    ];
    for (values, expected) in &hand {
        let got = optimal_online_dp(values)?;
        if &got != expected {
            failures.push(format!("dp{values:?} = {got}, expected {expected}"));
        }
    }
    let grid = dominance_grid();
    let strategies = StrategySpec::secretary_catalog();
    let mut checked = 0usize;
    let mut min_margin = f64::INFINITY;
    for (g, values) in grid.iter().enumerate() {
        let dp = to_f64(&optimal_online_dp(values)?);
        let floats: Vec<f64> = values.iter().map(|&v| v as f64).collect();
        for (s, &strategy) in strategies.iter().enumerate() {
            let mut c = ExperimentConfig::new(strategy, InstanceSpec::Values(floats.clone()));
            c.order = Some(OrderOverride::Uniform);
            c.trials = trials;
            c.seed = opts.seed(9, (g * 64 + s) as u64);
            let r = run(c)?;
            checked += 1;
            let margin = dp + 3.0 * r.std_error + 1e-12 - r.mean_score;
            min_margin = min_margin.min(margin);
            if margin < 0.0 {
                failures.push(format!(
                    "{strategy} on {values:?}: mean {:.4} > dp {dp:.4} + 3*{:.4}",
                    r.mean_score, r.std_error
                ));
            }
        }
    }
    Ok(Outcome {
        passed: failures.is_empty(),
        summary: if failures.is_empty() {
            format!(
                "{checked} strategy/instance cells below dp + 3SE (min margin {min_margin:.4}); {{0,2}} -> 2, {{1,2}} -> 3/2"
            )
        } else {
            failures.join("; ")
        },
        details: json!({ "instances": grid.len(), "cells": checked, "failures": failures }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let v = [3.0, 1.0, 2.0, 0.0];
        let o = adversarial_orders(&v);
        assert_eq!(o[0].1, vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(o[1].1, vec![3.0, 2.0, 1.0, 0.0]);
        assert_eq!(o[2].1, vec![0.0, 3.0, 1.0, 2.0]);
    }

    #[test]
    fn grid_sizes() {
        let g = dominance_grid();
        assert!(g.iter().all(|v| !v.is_empty() && v.len() <= 8));
        assert_eq!(g.len(), 4 + 10 + 20 + 35 + 6);
    }

    #[test]
    fn unknown_criterion() {
        let opts = VerifyOptions {
            only: vec![10],
            ..VerifyOptions::default()
        };
        assert!(matches!(verify(&opts), Err(Error::Config(_))));
    }

    #[test]
    fn quick_criteria() {
        let opts = VerifyOptions {
            only: vec![4],
            ..VerifyOptions::default()
        };
        let r = verify(&opts).unwrap();
        assert!(r.passed, "{}", r.criteria[0].line());
    }
}
