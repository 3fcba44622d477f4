//! Parse laws, evaluate upper quantiles and the quantile of a maximum.

use penbench::distributions::{max_law_upper_quantile, parse_law, Distribution, Law};
use penbench::rng::seeded;

fn main() -> penbench::Result<()> {
    let exp: Law = parse_law("exp(1)")?;
    for alpha in [0.5, 0.125, 1.0 / 64.0] {
        println!(
            "{exp}: P(X > tau) = {alpha} at tau = {:.6}",
            exp.upper_quantile(alpha)?
        );
    }

    let atoms = parse_law("discrete(0: 0.5, 2: 0.5)")?;
    println!(
        "{atoms} has atoms: {}; smoothed: {}",
        atoms.has_atoms(),
        atoms.clone().continuous()
    );

    let mut rng = seeded(1);
    let draws: Vec<f64> = (0..5).map(|_| exp.sample(&mut rng)).collect();
    println!("five draws: {draws:.3?}");

    let laws = vec![Law::uniform(0.0, 1.0)?, Law::uniform(0.0, 1.0)?];
    let median = max_law_upper_quantile(&laws, 0.5)?;
    println!(
        "median of the max of two uniforms: {median:.6} (sqrt(1/2) = {:.6})",
        0.5f64.sqrt()
    );

    match parse_law("exp(1") {
        Err(e) => println!("parse error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
