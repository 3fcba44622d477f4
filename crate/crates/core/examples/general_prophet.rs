//! Independent, non-identical laws: tail groups, the chosen group and block strategy.

use penbench::distributions::Law;
use penbench::harness::{run, ExperimentConfig};
use penbench::prophet::TailGroupProfile;

fn main() -> penbench::Result<()> {
    let mut laws = vec![Law::degenerate(1.0)?; 6];
    laws.push(Law::exponential(0.5)?);
    laws.push(Law::uniform(0.0, 8.0)?);
    let profile = TailGroupProfile::new(laws)?;
    println!("median of the max: {:.4}", profile.tau_half);
    for (i, a) in profile.alphas.iter().enumerate() {
        println!("  option {}: P(X > median) = {a:.4}", i + 1);
    }
    for (j, g) in profile.groups.iter().enumerate() {
        println!("  group {j}: {g:?}");
    }
    println!(
        "selected group {} with weights {:.3?}",
        profile.j_star, profile.weights
    );

    let report = run(ExperimentConfig::parse("general", "mixed(512)")?.with_trials(20_000))?;
    println!(
        "general on mixed(512): mean {:.4}, E[max] {:.4}, ratio {:.2}",
        report.mean_score,
        report.benchmark,
        report.ratio.unwrap_or(f64::NAN)
    );
    Ok(())
}
