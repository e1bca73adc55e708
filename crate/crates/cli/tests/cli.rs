use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use subdiv::shapes::{fan, triangle};

const SPLIT_SQUARE: &str = r#"{
  "vertices": [0, 1, 2, 3],
  "edges": [[0, 1], [1, 2], [2, 0], [2, 3], [3, 0]],
  "faces": [[1, 2, 3], [-3, 4, 5]],
  "markings": { "quad": { "top": [0], "bottom": [3], "left": [4], "right": [1] } }
}"#;

fn subdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subdiv")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn rules_list() {
    let out = subdiv(&["rules", "list"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "barycentric\nhexagonal\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(subdiv(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(subdiv(&["modulus"]).status.code(), Some(1));
    let bad = file(dir.path(), "bad.json", r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"faces":[[1,2,5]]}"#);
    let out = subdiv(&["subdivide", "--rule", "barycentric", "--input", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing edge"));
    let missing = dir.path().join("missing.json");
    assert_eq!(subdiv(&["subdivide", "--rule", "barycentric", "--input", s(&missing)]).status.code(), Some(4));
    let t = file(dir.path(), "t.json", &triangle().to_json());
    assert_eq!(subdiv(&["subdivide", "--rule", "nope", "--input", s(&t)]).status.code(), Some(2));
}

#[test]
fn subdivide_counts() {
    let dir = tempfile::tempdir().unwrap();
    let t = file(dir.path(), "t.json", &triangle().to_json());
    let out_path = dir.path().join("out.json");
    let out = subdiv(&["subdivide", "--rule", "barycentric", "--input", s(&t), "--levels", "2", "--output", s(&out_path)]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(doc["faces"].as_array().unwrap().len(), 36);
}

#[test]
fn square_modulus_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let q = file(dir.path(), "q.json", SPLIT_SQUARE);
    let sub = dir.path().join("q2.json");
    assert!(subdiv(&["subdivide", "--rule", "barycentric", "--input", s(&q), "--levels", "2", "--output", s(&sub)]).status.success());
    for input in [&q, &sub] {
        let out = subdiv(&["modulus", "--input", s(input), "--marking", "quad", "--mode", "vertex", "--which", "sup"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert!((json(&out)["value"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    }
    let out = subdiv(&["modulus", "--input", s(&q), "--oracle"]);
    assert!((json(&out)["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(subdiv(&["modulus", "--input", s(&q), "--marking", "ring"]).status.code(), Some(2));
}

#[test]
fn pack_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let t = file(dir.path(), "t.json", &triangle().to_json());
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for p in [&a, &b] {
        let out = subdiv(&["pack", "--input", s(&t), "--rule", "hexagonal", "--levels", "2", "--svg", s(p), "--color-by", "stage"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(json(&out)["angle_residual"].as_f64().unwrap() < 1e-8);
    }
    let svg = std::fs::read(&a).unwrap();
    assert_eq!(svg, std::fs::read(&b).unwrap());
    assert_eq!(String::from_utf8(svg).unwrap().matches("data-vertex").count(), 15);
}

#[test]
fn manifests_repeat() {
    let dir = tempfile::tempdir().unwrap();
    let t = file(dir.path(), "t.json", &triangle().to_json());
    let read = |name: &str| -> Value {
        let m = dir.path().join(name);
        assert!(subdiv(&["--manifest", s(&m), "subdivide", "--rule", "hexagonal", "--input", s(&t)]).status.success());
        serde_json::from_str(&std::fs::read_to_string(m).unwrap()).unwrap()
    };
    let (a, b) = (read("m1.json"), read("m2.json"));
    assert_eq!(a["output_hashes"], b["output_hashes"]);
    assert_eq!(a["input_hashes"], b["input_hashes"]);
    assert_eq!(a["output_hashes"]["stdout"].as_str().unwrap().len(), 64);
}

#[test]
fn criterion_layers_and_axioms() {
    let dir = tempfile::tempdir().unwrap();
    let out = subdiv(&["criterion", "--rule", "hexagonal", "--levels", "1", "--mode", "vertex"]);
    assert!(out.status.success());
    assert!(json(&out)["m"].as_f64().unwrap() > 0.0);
    let f = file(dir.path(), "f.json", &fan(6).to_json());
    let out = subdiv(&["layers", "--rule", "barycentric", "--input", s(&f), "--vertex", "0", "--stages", "3"]);
    let v = json(&out);
    assert!((v["bound"].as_f64().unwrap() - (1.0 / 6.0 + 1.0 / 12.0 + 1.0 / 24.0)).abs() < 1e-5);
    let out = subdiv(&["axiom", "--which", "2", "--rule", "hexagonal", "--input", s(&f), "--vertex", "0", "--stages", "2", "--threshold", "0.1"]);
    assert!(out.status.success());
    let v = json(&out);
    let layered: Vec<f64> = v["layered"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let want = layered.iter().position(|&x| x > 0.1).unwrap();
    assert_eq!(v["threshold_stage"], want);
    let out = subdiv(&["axiom", "--which", "0", "--rule", "hexagonal", "--input", s(&f), "--vertex", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    for suite in ["packing", "oracle"] {
        let out = subdiv(&["--threads", "2", "verify", "--suite", suite]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["passed"], true);
    }
}
