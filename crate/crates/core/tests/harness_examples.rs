//! Experiment runner behavior on the documented examples.

use penbench::harness::{run, sweep, Experiment, ExperimentConfig, OrderOverride};
use penbench::oracle::harmonic_f64;
use penbench::Error;

fn cfg(strategy: &str, instance: &str) -> ExperimentConfig {
    ExperimentConfig::parse(strategy, instance).unwrap()
}

#[test]
fn fixed_order_single_trial_is_deterministic() {
    let r = run(cfg("threshold:2", "values(1, 5)")
        .with_order(OrderOverride::Fixed)
        .with_trials(1))
    .unwrap();
    assert_eq!((r.mean_score, r.std_error), (3.0, 0.0));
}

#[test]
fn iid_mix_benchmark_matches_harmonic_number() {
    let r = run(cfg("iid-mix", "iid(exp(1), 1024)")
        .with_trials(100_000)
        .with_seed(5))
    .unwrap();
    let h = harmonic_f64(1024).unwrap();
    assert!((h - 7.509).abs() < 1e-3);
    assert!(
        (r.benchmark - h).abs() <= 4.0 * r.benchmark_se,
        "{} vs {h}",
        r.benchmark
    );
    let ratio = r.ratio.unwrap();
    assert!((ratio - r.benchmark / r.mean_score).abs() < 1e-12);
}

#[test]
fn reports_are_byte_identical_across_runs_and_worker_counts() {
    let mut c = cfg("general", "mixed(64)").with_trials(2_000).with_seed(11);
    let first = serde_json::to_string(&run(c.clone()).unwrap()).unwrap();
    assert_eq!(
        first,
        serde_json::to_string(&run(c.clone()).unwrap()).unwrap()
    );
    for workers in [1, 2, 3] {
        c.workers = Some(workers);
        let a = Experiment::new(c.clone()).unwrap().trials().unwrap();
        c.workers = None;
        let b = Experiment::new(c.clone()).unwrap().trials().unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn different_seeds_differ() {
    let a = run(cfg("iid-mix", "iid(exp(1), 32)")
        .with_trials(200)
        .with_seed(1))
    .unwrap();
    let b = run(cfg("iid-mix", "iid(exp(1), 32)")
        .with_trials(200)
        .with_seed(2))
    .unwrap();
    assert_ne!(a.mean_score, b.mean_score);
}

#[test]
fn iid_mix_ratio_grows_like_log_n() {
    let t = sweep(
        &cfg("iid-mix", "iid(exp(1), 8)").with_trials(20_000),
        &[64, 256, 1024, 4096],
    )
    .unwrap();
    let c = t.fitted_c.unwrap();
    for row in &t.rows {
        let r = row.report.as_ref().unwrap();
        let ln = (r.n as f64).ln();
        // The mixture guarantee is a 3 ln n ratio; the fit must sit well inside it.
        assert!(
            r.ratio.unwrap() <= 3.0 * ln,
            "n={} ratio={}",
            r.n,
            r.ratio.unwrap()
        );
    }
    assert!(c > 0.5 && c < 3.0, "fitted c = {c}");
}

#[test]
fn single_size_sweep_has_one_row() {
    let t = sweep(&cfg("iid-mix", "iid(exp(1), 8)").with_trials(100), &[16]).unwrap();
    assert_eq!(t.rows.len(), 1);
    assert_eq!(t.rows[0].report.as_ref().unwrap().n, 16);
}

#[test]
fn gap_sweep_success_column() {
    let t = sweep(
        &cfg("sec-gap", "powers(4, 2)")
            .with_trials(10_000)
            .with_seed(9),
        &[6, 8, 10],
    )
    .unwrap();
    for row in &t.rows {
        let r = row.report.as_ref().unwrap();
        assert!(
            r.success_rate.unwrap() >= 1.0 - (-1.0f64).exp() - 0.02,
            "{:?}",
            r.success_rate
        );
    }
}

#[test]
fn empty_sweep_is_a_config_error() {
    assert!(matches!(
        sweep(&cfg("iid-mix", "iid(exp(1), 8)"), &[]),
        Err(Error::Config(_))
    ));
}

#[test]
fn instance_files_round_trip_through_experiments() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    penbench::instances::Instance::fixed(vec![1.0, 5.0])
        .unwrap()
        .save(&path)
        .unwrap();
    let spec = format!("file({})", path.display());
    let r = run(cfg("threshold:2", &spec).with_trials(1)).unwrap();
    assert_eq!(r.mean_score, 3.0);
}

#[test]
fn parse_errors_carry_positions() {
    match ExperimentConfig::parse("threshold:2", "iid(exp(1), x)") {
        Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 13)),
        other => panic!("{other:?}"),
    }
}
