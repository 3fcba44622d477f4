//! Quantile-ladder strategies for i.i.d. values with a known law.

use penbench::distributions::Law;
use penbench::harness::{run, ExperimentConfig};
use penbench::oracle::harmonic_f64;
use penbench::prophet::IidPlan;

fn main() -> penbench::Result<()> {
    let n = 1024;
    let plan = IidPlan::new(Law::exponential(1.0)?, n)?;
    println!("grid of {} levels:", plan.grid().k());
    for (a, t) in plan.grid().alphas.iter().zip(&plan.grid().taus) {
        println!("  alpha {a:.6} -> threshold {t:.4}");
    }
    if let Some(r) = plan.refined_mixture() {
        println!(
            "refined: x = {:.6}, k = {}, weights {:.4?}",
            r.x, r.k, r.weights
        );
    }

    println!("E[max] = H_{n} = {:.4}", harmonic_f64(n)?);
    for strategy in ["iid-first", "iid-second", "iid-mix", "iid-refined"] {
        let report = run(
            ExperimentConfig::parse(strategy, &format!("iid(exp(1), {n})"))?.with_trials(20_000),
        )?;
        println!(
            "{strategy:>12}: mean {:.4} +- {:.4}, ratio {:.2}, P(accept) {:.3}",
            report.mean_score,
            report.std_error,
            report.ratio.unwrap_or(f64::NAN),
            report.acceptance_rate
        );
    }
    Ok(())
}
