//! One sample per law instead of the laws themselves.

use penbench::distributions::max_law_upper_quantile;
use penbench::harness::{mixed_laws, run, ExperimentConfig};

fn main() -> penbench::Result<()> {
    for n in [256, 1024] {
        let laws = mixed_laws(n)?;
        let lo = max_law_upper_quantile(&laws, 2.0 / 3.0)?;
        let hi = max_law_upper_quantile(&laws, 1.0 / 3.0)?;
        let report = run(
            ExperimentConfig::parse("single-sample", &format!("mixed({n})"))?.with_trials(20_000),
        )?;
        println!(
            "n = {n}: sample max lands in [{lo:.3}, {hi:.3}] w.p. 1/3; mean {:.4}, E[max] {:.4}, floor E[max]/(6 ln n) = {:.4}",
            report.mean_score,
            report.benchmark,
            report.benchmark / (6.0 * (n as f64).ln())
        );
    }
    Ok(())
}
