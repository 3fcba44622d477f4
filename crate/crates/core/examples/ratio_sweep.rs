//! Sweep sizes, print the CSV table and the fitted log-growth constant.

use penbench::harness::{sweep, ExperimentConfig};

fn main() -> penbench::Result<()> {
    let template = ExperimentConfig::parse("iid-mix", "iid(exp(1), 64)")?
        .with_trials(20_000)
        .with_seed(7);
    let table = sweep(&template, &[64, 256, 1024, 4096])?;
    print!("{}", table.to_csv()?);
    if let Some(c) = table.fitted_c {
        println!("ratio ~ {c:.3} ln n");
    }
    Ok(())
}
