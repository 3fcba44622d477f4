//! `penbench`: run experiments, sweeps, the acceptance suite, exact oracles and the bit
//! sampling game from the command line.
//!
//! Exit codes: 0 success, 1 runtime error, 2 configuration or parse error, 3 acceptance
//! failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use penbench::bit_sampling::{
    check_suffix_bound, min_win_prob_exhaustive, play_game, win_probability, BitSequence,
    WinProbability,
};
use penbench::harness::verify::{verify, VerifyOptions, DEFAULT_SEED};
use penbench::harness::{run, sweep, ExperimentConfig, OrderOverride, OutputFormat};
use penbench::oracle::{
    commit_observe_bound, commit_observe_optimum, harmonic, harmonic_f64, optimal_online_dp, to_f64,
};
use penbench::rng::seeded;
use penbench::stats::MeanSe;
use penbench::Error;

#[derive(Parser)]
#[command(
    name = "penbench",
    version,
    about = "Online pen testing simulations and exact oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and print its report.
    Run(ExperimentArgs),
    /// Run one experiment per size and print a table.
    Sweep {
        #[command(flatten)]
        args: ExperimentArgs,
        /// Comma-separated ascending sizes (n, or k for powers/geometric).
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// Run the acceptance criteria.
    Verify {
        /// Tenth of the trials with widened absolute slacks.
        #[arg(long)]
        fast: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Comma-separated criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Per-criterion timeout in seconds.
        #[arg(long, default_value_t = 300)]
        timeout: u64,
        /// Write the machine-readable result as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact oracles with JSON output.
    Oracle {
        /// Exact harmonic number H_n.
        #[arg(long, value_name = "N", conflicts_with_all = ["commit_observe", "dp"])]
        harmonic: Option<usize>,
        /// Commit/observe optimum and its closed form for k, theta, delta.
        #[arg(long = "lemma62", alias = "commit-observe", num_args = 3, value_names = ["K", "THETA", "DELTA"], conflicts_with = "dp")]
        commit_observe: Option<Vec<u32>>,
        /// Optimal online expected score of small integer values in random order.
        #[arg(long, num_args = 1.., value_name = "VALUE")]
        dp: Option<Vec<u32>>,
    },
    /// The bit sampling game.
    Bitgame {
        /// Exact win probability of this bit string (strict majority of ones).
        #[arg(long)]
        sequence: Option<String>,
        /// Simulated games for `--sequence`.
        #[arg(long, default_value_t = 0)]
        play: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exhaustive minimum and suffix check up to this length.
        #[arg(long, default_value_t = 14)]
        max_len: usize,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON or TOML configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    instance: Option<String>,
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Tenth of the trials.
    #[arg(long)]
    fast: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Uniform,
    Fixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

enum Failure {
    Error(Error),
    Acceptance,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Acceptance) => ExitCode::from(3),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_)
                | Error::Parse { .. }
                | Error::Validation(_)
                | Error::Domain(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn build_config(args: &ExperimentArgs) -> Result<(ExperimentConfig, OutputFormat), Error> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => {
            let strategy = args
                .strategy
                .as_deref()
                .ok_or_else(|| Error::Config("--strategy or --config is required".into()))?;
            let instance = args
                .instance
                .as_deref()
                .ok_or_else(|| Error::Config("--instance or --config is required".into()))?;
            ExperimentConfig::parse(strategy, instance)?
        }
    };
    if args.config.is_some() {
        if let Some(s) = &args.strategy {
            config.strategy = s.parse()?;
        }
        if let Some(i) = &args.instance {
            config.instance = i.parse()?;
        }
    }
    if let Some(o) = args.order {
        config.order = Some(match o {
            OrderArg::Uniform => OrderOverride::Uniform,
            OrderArg::Fixed => OrderOverride::Fixed,
        });
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(t) = args.trials {
        config.trials = t;
    }
    if args.fast {
        config.trials = (config.trials / 10).max(1);
    }
    if let Some(w) = args.workers {
        config.workers = Some(w);
    }
    if let Some(out) = &args.out {
        let format = args
            .format
            .map(OutputFormat::from)
            .or(config.output.as_ref().map(|o| o.format))
            .unwrap_or_default();
        config.output = Some(penbench::harness::OutputConfig {
            path: out.clone(),
            format,
        });
    }
    let format = args
        .format
        .map(OutputFormat::from)
        .or(config.output.as_ref().map(|o| o.format))
        .unwrap_or_default();
    Ok((config, format))
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run(args) => {
            let (config, format) = build_config(&args)?;
            let output = config.output.clone();
            let report = run(config)?;
            match output {
                Some(o) => report.write(&o.path, o.format)?,
                None => match format {
                    OutputFormat::Json => println!("{}", report.to_json()?),
                    OutputFormat::Csv => print!("{}", report.to_csv()?),
                },
            }
        }
        Command::Sweep { args, sizes } => {
            let (config, format) = build_config(&args)?;
            let sizes = if sizes.is_empty() {
                config.sizes.clone().unwrap_or_default()
            } else {
                sizes
            };
            let output = config.output.clone();
            let table = sweep(&config, &sizes)?;
            match output {
                Some(o) => table.write(&o.path, o.format)?,
                None => match format {
                    OutputFormat::Json => println!("{}", table.to_json()?),
                    OutputFormat::Csv => print!("{}", table.to_csv()?),
                },
            }
            if let Some(c) = table.fitted_c {
                eprintln!("fitted ratio ~ {c:.4} * ln n");
            }
        }
        Command::Verify {
            fast,
            seed,
            only,
            timeout,
            out,
        } => {
            let opts = VerifyOptions {
                fast,
                seed,
                only,
                timeout: Duration::from_secs(timeout),
            };
            let report = verify(&opts)?;
            for c in &report.criteria {
                println!("{}", c.line());
            }
            if let Some(path) = out {
                let text =
                    serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
                std::fs::write(&path, text)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            if !report.passed {
                return Err(Failure::Acceptance);
            }
        }
        Command::Oracle {
            harmonic: h,
            commit_observe,
            dp,
        } => {
            if let Some(n) = h {
                let exact = harmonic(n)?;
                print_json(&json!({
                    "n": n,
                    "exact": exact.to_string(),
                    "value": harmonic_f64(n)?,
                }));
            } else if let Some(args) = commit_observe {
                let (k, theta, delta) = (args[0], args[1], args[2]);
                let bound = commit_observe_bound(k, theta, delta)?;
                let optimum = commit_observe_optimum(k, theta, delta).map(|v| v.to_string());
                print_json(&json!({
                    "k": k,
                    "theta": theta,
                    "delta": delta,
                    "good": bound.good.to_string(),
                    "bad": bound.bad.to_string(),
                    "closed_form": bound.bound.to_string(),
                    "closed_form_value": to_f64(&bound.bound),
                    "cap": bound.cap.to_string(),
                    "optimum": optimum.as_ref().ok(),
                    "optimum_error": optimum.as_ref().err().map(|e| e.to_string()),
                }));
            } else if let Some(values) = dp {
                let v = optimal_online_dp(&values)?;
                print_json(&json!({
                    "values": values,
                    "optimum": v.to_string(),
                    "value": to_f64(&v),
                }));
            } else {
                return Err(Error::Config("give one of --harmonic, --lemma62, --dp".into()).into());
            }
        }
        Command::Bitgame {
            sequence,
            play,
            seed,
            max_len,
        } => match sequence {
            Some(s) => {
                let seq: BitSequence = s.parse()?;
                let p = win_probability(&seq)?;
                let exact = match &p {
                    WinProbability::Exact(r) => Some(r.to_string()),
                    WinProbability::Approximate(_) => None,
                };
                let simulated = if play > 0 {
                    let mut rng = seeded(seed);
                    let wins = (0..play)
                        .map(|_| play_game(&seq, &mut rng))
                        .collect::<Result<Vec<bool>, Error>>()?;
                    let m = MeanSe::of_bools(wins);
                    Some(json!({ "games": play, "rate": m.mean, "se": m.se }))
                } else {
                    None
                };
                print_json(&json!({
                    "sequence": seq.to_string(),
                    "win_probability": p.to_f64(),
                    "exact": exact,
                    "simulated": simulated,
                }));
            }
            None => {
                let min = min_win_prob_exhaustive(max_len)?;
                let suffix = check_suffix_bound(max_len)?;
                print_json(&json!({
                    "max_len": max_len,
                    "minimum": min.minimum.to_string(),
                    "minimum_value": to_f64(&min.minimum),
                    "witness": min.witness.to_string(),
                    "sequences": min.sequences,
                    "suffix_states": suffix.states_checked,
                    "suffix_violations": suffix.violations.len(),
                }));
            }
        },
    }
    Ok(())
}
