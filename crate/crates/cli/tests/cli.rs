use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const THETA: &str = r#"{"vertices":["u","v"],"edges":[
  {"id":"e1","u":"u","v":"v","length":1},
  {"id":"e2","u":"u","v":"v","length":2},
  {"id":"e3","u":"u","v":"v","length":3}]}"#;

fn c12() -> String {
    let vertices: Vec<String> = (0..12).map(|i| format!("\"c{i}\"")).collect();
    let edges: Vec<String> = (0..12)
        .map(|i| format!(r#"{{"id":"e{i}","u":"c{i}","v":"c{}","length":1}}"#, (i + 1) % 12))
        .collect();
    format!(r#"{{"vertices":[{}],"edges":[{}]}}"#, vertices.join(","), edges.join(","))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphapx")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn info_and_sequence() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "theta.json", THETA);
    let info = json(&run(&["info", "--graph", s(&g)]));
    assert_eq!(info["betti1"], 2);
    assert_eq!(info["total_length"], 6.0);
    let seq = json(&run(&["seq", "--graph", s(&g)]));
    let a: Vec<f64> = seq["a"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!((a[0] - 4.0 / 3.0).abs() < 1e-12 && (a[1] - 1.0).abs() < 1e-12);
}

#[test]
fn distance_and_points() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "theta.json", THETA);
    let out = run(&["distance", "--graph", s(&g), "--basepoint", r#"{"vertex":"u"}"#, "--target", r#"{"edge":"e3","offset":2.5}"#]);
    assert_eq!(json(&out)["distance"], 1.5);
    let net = json(&run(&["net", "--graph", s(&g), "--mesh", "0.5"]));
    assert_eq!(net["points"].as_array().unwrap().len(), 2 + 1 + 3 + 5);
}

#[test]
fn circle_commands() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c12.json", &c12());
    let bars = json(&run(&["barcode", "--graph", s(&g), "--mesh", "0.25"]));
    assert_eq!(bars["bars"].as_array().unwrap().len(), 1);
    let hyp = json(&run(&["hyp", "--graph", s(&g), "--mesh", "0.1"]));
    assert!((2.9..=3.1).contains(&hyp["hyp"].as_f64().unwrap()));
    let sm = json(&run(&["smooth", "--graph", s(&g), "--epsilon", "6"]));
    assert!(sm["level"].is_object());
    let delta = json(&run(&["delta", "--graph", s(&g), "--n", "0", "--mesh", "0.1"]));
    assert_eq!(delta["lower"], 1.0);
    assert!(delta["upper"].as_f64().unwrap() >= 1.0);

    let tree = run(&["tree", "--graph", s(&g)]);
    assert!(tree.status.success());
    let text = String::from_utf8(tree.stdout).unwrap();
    let (doc, dendro) = text.split_once('\n').unwrap();
    let doc: Value = serde_json::from_str(doc).unwrap();
    assert_eq!(doc["nodes"].as_array().unwrap().len(), 2);
    assert!(dendro.contains("6.000000"));
}

#[test]
fn gh_between_graphs() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", THETA);
    let b = write(&dir, "b.json", &c12());
    let r = json(&run(&["gh", "--graph", s(&a), "--other", s(&b)]));
    assert!(r["lower"].as_f64().unwrap() <= r["upper"].as_f64().unwrap());
    assert_eq!(r["quantity"], "d_GH");
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"vertices":["a","b"],"edges":[{"id":"e1","u":"a","v":"b","length":0}]}"#);
    let out = run(&["info", "--graph", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("edge e1: length must be > 0"));
    assert_eq!(run(&["info", "--graph", s(&dir.path().join("none.json"))]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let g = write(&dir, "theta.json", THETA);
    assert_eq!(run(&["net", "--graph", s(&g), "--mesh", "-1"]).status.code(), Some(2));
}

#[test]
fn verify_writes_deterministic_csv() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run(&["verify", "--seed", "3", "--count", "8", "--format", "csv", "--out", s(p)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("check,anchor,instance,left,right,slack,pass\n"));
    assert!(!text.contains(",false\n"));
}

#[test]
fn corrupted_check_exits_1() {
    let out = run(&["verify", "--seed", "3", "--count", "6", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["summary"]["failed"].as_u64().unwrap() > 0);
}
