//! Fixed values in uniformly random order under full, optimum-only and no information.

use penbench::harness::{run, ExperimentConfig};
use penbench::instances::power_counts;
use penbench::secretary::{gap_algorithm, random_order_levels, warmup_full_info, BucketProfile};

fn main() -> penbench::Result<()> {
    let inst = power_counts(10, 2)?;
    let n = inst.n();
    let k = random_order_levels(n);
    let buckets = BucketProfile::new(&inst.values, k, inst.benchmark)?;
    println!(
        "powers(10, 2): n = {n}, top {}, {k} buckets",
        inst.benchmark
    );
    println!(
        "  counts per bucket: {:?}",
        (1..=k).map(|j| buckets.count(j)).collect::<Vec<_>>()
    );
    println!(
        "  full-information threshold: {}",
        warmup_full_info(&inst.values)?.theta()
    );
    println!(
        "  gap algorithm levels: {}",
        gap_algorithm(&inst.values)?.k()
    );

    for strategy in [
        "sec-full",
        "sec-opt",
        "sec-hint:5",
        "sec-noinfo",
        "sec-gap",
        "baseline-uniform",
    ] {
        let r = run(ExperimentConfig::parse(strategy, "powers(10, 2)")?.with_trials(10_000))?;
        println!(
            "{strategy:>16}: mean {:.4}, ratio {:>6.2}, P(score >= top/k) {}",
            r.mean_score,
            r.ratio.unwrap_or(f64::NAN),
            r.success_rate
                .map_or("-".to_string(), |s| format!("{s:.3}"))
        );
    }
    Ok(())
}
