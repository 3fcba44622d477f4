//! The bit sampling game and the arbitrary-order strategy built on it.

use penbench::bit_sampling::{exact_win_prob, min_win_prob_exhaustive, BitSequence};
use penbench::harness::verify::adversarial_orders;
use penbench::harness::{run, ExperimentConfig, InstanceSpec, OrderOverride, StrategySpec};
use penbench::instances::power_counts;
use penbench::oracle::to_f64;

fn main() -> penbench::Result<()> {
    for s in ["1", "011", "0011011", "0001111111"] {
        let seq: BitSequence = s.parse()?;
        let p = exact_win_prob(&seq)?;
        println!("P(win) on {s:>10} = {p} ({:.4})", to_f64(&p));
    }
    let min = min_win_prob_exhaustive(12)?;
    println!(
        "minimum over {} sequences up to length 12: {:.4} at {}",
        min.sequences,
        to_f64(&min.minimum),
        min.witness
    );

    let inst = power_counts(8, 2)?;
    for (name, order) in adversarial_orders(&inst.values) {
        let mut c = ExperimentConfig::new(StrategySpec::SecArb(None), InstanceSpec::Values(order));
        c.order = Some(OrderOverride::Fixed);
        c.trials = 10_000;
        let r = run(c)?;
        println!("sec-arb, {name:>11} order: mean {:.4}", r.mean_score);
    }
    Ok(())
}
