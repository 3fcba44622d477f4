//! Hard instances: the geometric-order generator and capped exponential values.

use penbench::harness::{run, ExperimentConfig};
use penbench::instances::{power_count_vector, GeometricOrderStream};
use penbench::oracle::safe_win_event_probability;
use penbench::rng::seeded;

fn main() -> penbench::Result<()> {
    let k = 6;
    println!(
        "geometric({k}) level counts: {:?}",
        power_count_vector(k, 4)?
    );
    let prefix: Vec<f64> = GeometricOrderStream::new(k, seeded(3))?.take(20).collect();
    println!("first arrivals: {prefix:?}");

    for theta in [0, 3, 6, 9] {
        let r = run(
            ExperimentConfig::parse(&format!("threshold:{theta}"), "geometric(10)")?
                .with_trials(2_000),
        )?;
        println!(
            "threshold {theta} on geometric(10): mean {:.4}",
            r.mean_score
        );
    }
    let s = safe_win_event_probability(8, 2, 3, 50, 1)?;
    println!(
        "last good after last bad: {:.3} (Chernoff {:.3})",
        s.frequency, s.chernoff
    );

    for strategy in ["sec-opt", "sec-gap", "sec-noinfo"] {
        let r = run(ExperimentConfig::parse(strategy, "truncexp(10000)")?.with_trials(2_000))?;
        println!(
            "{strategy} on truncexp(10000): mean {:.4}, E[max] {:.4}",
            r.mean_score, r.benchmark
        );
    }
    Ok(())
}
