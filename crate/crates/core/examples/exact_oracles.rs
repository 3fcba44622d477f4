//! Exact rational oracles: harmonic numbers, the commit/observe optimum and the
//! optimal online player on small integer instances.

use penbench::oracle::{commit_observe_bound, commit_observe_optimum, harmonic, optimal_online_dp};

fn main() -> penbench::Result<()> {
    for n in [1, 2, 3, 10] {
        println!("H_{n} = {}", harmonic(n)?);
    }
    for (k, theta, delta) in [(4, 1, 2), (5, 0, 3), (5, 2, 1)] {
        let b = commit_observe_bound(k, theta, delta)?;
        println!(
            "k={k} theta={theta} delta={delta}: good {} bad {} optimum {} (cap {})",
            b.good,
            b.bad,
            commit_observe_optimum(k, theta, delta)?,
            b.cap
        );
    }
    for values in [
        vec![0, 2],
        vec![1, 2],
        vec![0, 0, 1, 2],
        vec![1, 2, 3, 4, 5],
    ] {
        println!(
            "online optimum on {values:?}: {}",
            optimal_online_dp(&values)?
        );
    }
    Ok(())
}
