use std::path::Path;
use std::process::{Command, Output};

use spanner_forge::io::{parse_edges, read_instance};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spanner-forge")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn generate_build_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("pts.txt");
    let edges = dir.path().join("greedy.edges");

    let out = run(&["generate", "--family", "random", "--n", "60", "--d", "3", "--seed", "5", "--out", s(&inst)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let file = read_instance(&inst).unwrap();
    assert_eq!(file.points.len(), 60);
    assert_eq!(file.points.dim(), 3);

    let out = run(&["build", "--builder", "greedy", "--eps", "0.2", "--in", s(&inst), "--out", s(&edges)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!parse_edges(&edges, 60).unwrap().is_empty());

    let out = run(&["verify", "--in", s(&inst), "--edges", s(&edges), "--t", "1.2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tool"], "spanner-forge");
    assert!(v["results"]["stretch"]["max_stretch"].as_f64().unwrap() <= 1.2 + 1e-9);

    // the same edges cannot meet a tighter bound
    let out = run(&["verify", "--in", s(&inst), "--edges", s(&edges), "--t", "1.0001"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_refuses_large_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("pts.txt");
    let edges = dir.path().join("e.edges");
    assert!(run(&["generate", "--family", "random", "--n", "40", "--out", s(&inst)]).status.success());
    assert!(run(&["build", "--builder", "net-tree", "--eps", "0.5", "--in", s(&inst), "--out", s(&edges)])
        .status
        .success());
    let out = run(&["verify", "--in", s(&inst), "--edges", s(&edges), "--t", "1.5", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--in", s(&inst), "--edges", s(&edges), "--t", "1.5", "--n-max", "10", "--force"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn compare_on_sparsity_instance() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("cmp.json");
    let out = run(&["compare", "--family", "sparsity-lb", "--eps", "0.0002", "--out", s(&report)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let rows = v["results"]["rows"].as_array().unwrap();
    let greedy = rows.iter().find(|r| r["builder"] == "greedy").unwrap();
    assert!(greedy["edge_ratio_vs_witness"].as_f64().unwrap() > 1.0);
    assert!(rows.iter().all(|r| r["verified"] == true));
}

#[test]
fn sweep_writes_csv_and_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep",
        "--family",
        "lightness-lb",
        "--eps-list",
        "0.02,0.01",
        "--out",
        s(&csv),
        "--gnuplot",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("builder,family,eps"));
    assert_eq!(lines.count(), 4);
    let slopes = json(&out);
    assert!(slopes.as_array().unwrap().iter().any(|s| s["builder"] == "greedy"));
    assert!(dir.path().join("sweep.csv.summary.json").exists());
    assert!(dir.path().join("sweep.csv.gp").exists());
}

#[test]
fn bad_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("bad.txt");
    std::fs::write(&inst, "2 3\n0 0\n1 1\n").unwrap();
    let edges = dir.path().join("e.edges");
    std::fs::write(&edges, "0 1\n").unwrap();
    let out = run(&["verify", "--in", s(&inst), "--edges", s(&edges), "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.txt:4:"));
}
