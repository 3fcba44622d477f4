//! The `penbench` binary: subcommands, output formats and exit codes.

use std::process::Command;

fn penbench(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_penbench"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn run_prints_a_json_report() {
    let (code, out, _) = penbench(&[
        "run",
        "--strategy",
        "threshold:2",
        "--instance",
        "values(1, 5)",
        "--trials",
        "1",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mean_score"], 3.0);
    assert_eq!(v["std_error"], 0.0);
}

#[test]
fn run_from_toml_config_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    std::fs::write(
        &cfg,
        "strategy = \"sec-gap\"\ninstance = \"powers(5, 2)\"\ntrials = 100\nseed = 3\n",
    )
    .unwrap();
    let out_path = dir.path().join("report.csv");
    let (code, _, err) = penbench(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--trials",
        "50",
        "--out",
        out_path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,mean,se,benchmark,ratio,success,error")
    );
    assert!(lines.next().unwrap().starts_with("63,"));
}

#[test]
fn config_errors_exit_with_2() {
    let (code, _, err) = penbench(&["run", "--strategy", "sec-bogus", "--instance", "values(1)"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 1"), "{err}");
    let (code, _, _) = penbench(&["run", "--strategy", "iid-mix", "--instance", "powers(3, 2)"]);
    assert_eq!(code, 2);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(
        &cfg,
        "{\"strategy\": \"sec-gap\",\n \"instance\": \"powers(3, 2)\", \"extra\": 1}",
    )
    .unwrap();
    let (code, _, err) = penbench(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn sweep_csv() {
    let (code, out, err) = penbench(&[
        "sweep",
        "--strategy",
        "iid-mix",
        "--instance",
        "iid(exp(1), 4)",
        "--sizes",
        "16,64",
        "--trials",
        "200",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    assert!(err.contains("fitted ratio"));
}

#[test]
fn oracle_outputs() {
    let (code, out, _) = penbench(&["oracle", "--dp", "1", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["optimum"], "3/2");
    let (_, out, _) = penbench(&["oracle", "--harmonic", "3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exact"], "11/6");
    let (_, out, _) = penbench(&["oracle", "--lemma62", "4", "1", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["optimum"], "3/7");
    let (code, _, _) = penbench(&["oracle", "--lemma62", "2", "2", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn bitgame_outputs() {
    let (code, out, _) = penbench(&["bitgame", "--sequence", "011", "--play", "100"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exact"], "33/128");
    let (code, out, _) = penbench(&["bitgame", "--max-len", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suffix_violations"], 0);
}

#[test]
fn verify_subset_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.json");
    let (code, out, _) = penbench(&["verify", "--only", "3,4", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    let (code, _, _) = penbench(&["verify", "--only", "12"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_timeout_fails_with_3() {
    let (code, out, _) = penbench(&["verify", "--only", "2", "--timeout", "0"]);
    assert_eq!(code, 3);
    assert!(
        out.contains("[FAIL] 2") && out.contains("timed out"),
        "{out}"
    );
}
