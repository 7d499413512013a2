//! End-to-end checks of the compiled binary: exit codes, output routing,
//! and format switches.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lapshift"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write_k3(dir: &Path) -> String {
    let p = dir.join("k3.txt");
    std::fs::write(&p, "0 1\n1 2\n0 2\n").unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn missing_graph_file_exits_2() {
    let out = run(&["stats", "/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: "), "stderr: {err}");
}

#[test]
fn malformed_edge_list_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.txt");
    std::fs::write(&p, "0 1\n1 x\n").unwrap();
    let out = run(&["stats", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_strength_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write_k3(dir.path());
    let out = run(&["rewire", &k3, "--alpha", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn range_check_on_irregular_graph_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p3.txt");
    std::fs::write(&p, "0 1\n1 2\n").unwrap();
    let out = run(&["verify", "range", p.to_str().unwrap(), "--mode", "self-loop"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("regular"), "stderr: {err}");
}

#[test]
fn unknown_flag_exits_2() {
    let out = bin().arg("--definitely-not-a-flag").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn diverging_sweep_exits_3_with_context() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let labels = dir.path().join("y.txt");
    let cfg = dir.path().join("cfg.json");
    let gen = run(&[
        "random",
        "planted",
        "--nodes",
        "16",
        "--p-in",
        "0.8",
        "--p-out",
        "0.1",
        "--seed",
        "3",
        "--labels-out",
        labels.to_str().unwrap(),
        "--out",
        graph.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    std::fs::write(&cfg, "{\"learning_rate\": 1e12, \"epochs\": 30, \"hidden\": 4}").unwrap();

    let out = run(&[
        "sweep",
        "--graph",
        graph.to_str().unwrap(),
        "--labels",
        labels.to_str().unwrap(),
        "--splits",
        "1",
        "--k-max",
        "3",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("sweep point"), "stderr: {err}");
}

#[test]
fn out_flag_writes_file_and_keeps_stdout_empty() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write_k3(dir.path());
    let dest = dir.path().join("report.json");
    let out = run(&["stats", &k3, "--out", dest.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());

    let text = std::fs::read_to_string(&dest).unwrap();
    assert!(text.ends_with('\n'));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["n"], 3);
    assert_eq!(v["m"], 3);
}

#[test]
fn csv_format_switch_changes_shape() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write_k3(dir.path());

    let out = run(&["stats", &k3, "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("\nn,3\n"));

    let out = run(&["spectrum", &k3, "--alpha", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "eigenvalue");
    assert_eq!(lines.len(), 4);
}

#[test]
fn spectrum_json_has_exactly_the_four_fields() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write_k3(dir.path());
    let out = run(&["spectrum", &k3, "--alpha", "2", "--gamma", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["alpha", "eigenvalues", "gamma", "source"]);
    assert_eq!(obj["eigenvalues"].as_array().unwrap().len(), 3);
}

#[test]
fn grid_csv_is_long_form() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let labels = dir.path().join("y.txt");
    let cfg = dir.path().join("cfg.json");
    let gen = run(&[
        "random",
        "planted",
        "--nodes",
        "16",
        "--p-in",
        "0.2",
        "--p-out",
        "0.7",
        "--seed",
        "11",
        "--labels-out",
        labels.to_str().unwrap(),
        "--out",
        graph.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    std::fs::write(&cfg, "{\"hidden\": 4, \"epochs\": 5, \"patience\": 5}").unwrap();

    let out = run(&[
        "grid",
        "--graph",
        graph.to_str().unwrap(),
        "--labels",
        labels.to_str().unwrap(),
        "--splits",
        "1",
        "--alpha-max",
        "2",
        "--gamma-max",
        "2",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,gamma,mean,std");
    assert_eq!(lines.len(), 5, "2x2 grid plus header: {text}");
    assert!(lines[1].starts_with("1,0,"));
    assert!(lines[4].starts_with("2,1,"));
}

#[test]
fn bench_reports_cap_exceeded_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write_k3(dir.path());
    let out = run(&["bench", &k3, "--dim-cap", "2", "--k-max", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["eigendecomposition"]["outcome"], "size_cap_exceeded");
}

#[test]
fn verify_perturbation_and_monotone_subcommands_emit_reports() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write_k3(dir.path());

    let out = run(&["verify", "perturbation", &k3, "--mode", "self-loop", "--value", "0.5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v["entries"].as_array().unwrap().len() == 3);

    let out = run(&["verify", "monotone", &k3, "--mode", "parallel-edge", "--steps", "0,1,2,4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
}
