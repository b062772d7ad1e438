use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hwcoho::hwmatrix::examples::{dim3, dim5_a, dim5_a_generators, dim5_b};
use hwcoho::io::{to_json, GeneratorsDoc, InvariantDoc, MatrixDoc};
use hwcoho::reconstruct::invariant_of;
use hwcoho::HWMatrix;
use serde_json::Value;
use tempfile::TempDir;

fn hwcoho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hwcoho")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn matrix_file(dir: &TempDir, name: &str, a: &HWMatrix) -> PathBuf {
    write(dir, name, &to_json(&MatrixDoc::from_matrix(a)).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_counts() {
    for (dim, classes) in [("3", 1), ("5", 2), ("7", 62)] {
        let out = hwcoho(&["classify", "--dim", dim]);
        assert_eq!(code(&out), 0);
        let v = json(&out);
        assert_eq!(v["class_count"], classes);
        assert_eq!(v["format"], "hwcoho/1");
    }
}

#[test]
fn classify_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(code(&hwcoho(&["classify", "--dim", "5", "--out", s(&a)])), 0);
    assert_eq!(code(&hwcoho(&["classify", "--dim", "5", "--out", s(&b), "--jobs", "1"])), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn enumerate_dim3() {
    let v = json(&hwcoho(&["enumerate", "--dim", "3"]));
    assert_eq!(v["count"], 8);
    assert_eq!(v["matrices"].as_array().unwrap().len(), 8);
    assert!(v["matrices"].as_array().unwrap().contains(&serde_json::json!([[1, 3, 2], [2, 1, 3], [3, 2, 1]])));
}

#[test]
fn invariants_of_first_example() {
    let dir = TempDir::new().unwrap();
    let out = hwcoho(&["invariants", "--in", s(&matrix_file(&dir, "g1.json", &dim5_a()))]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["d_size"], 5);
    assert_eq!(v["s_sum"], serde_json::json!([]));
    let comps = v["graph_components"].as_array().unwrap();
    assert_eq!(comps.len(), 5);
    assert!(comps.iter().all(|c| c.as_array().unwrap().len() == 1));
    assert!(v.get("matrix").is_none());
}

#[test]
fn generator_input_is_echoed_as_matrix() {
    let dir = TempDir::new().unwrap();
    let gens = write(&dir, "gens.json", &to_json(&GeneratorsDoc::from_generators(5, &dim5_a_generators())).unwrap());
    let v = json(&hwcoho(&["invariants", "--in", s(&gens)]));
    assert_eq!(v["matrix"]["rows"], serde_json::to_value(dim5_a().index_rows()).unwrap());
}

#[test]
fn invalid_matrix_exits_4_with_clause() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"n":3,"rows":[[1,2,2],[2,1,2]]}"#);
    let out = hwcoho(&["invariants", "--in", s(&bad)]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("torsion-free subset {1,2}"));
}

#[test]
fn config_and_io_exit_codes() {
    assert_eq!(code(&hwcoho(&["classify", "--dim", "4"])), 2);
    assert_eq!(code(&hwcoho(&["classify", "--dim", "11"])), 2);
    assert_eq!(code(&hwcoho(&["verify", "--dim", "5", "--suite", "nonsense"])), 2);
    assert_eq!(code(&hwcoho(&["frobnicate"])), 2);
    assert_eq!(code(&hwcoho(&["canon", "--in", "/nonexistent/m.json"])), 3);
}

#[test]
fn rigidity_decisions() {
    let dir = TempDir::new().unwrap();
    let g1 = matrix_file(&dir, "g1.json", &dim5_a());
    let g2 = matrix_file(&dir, "g2.json", &dim5_b());
    let scrambled = dir.path().join("g1s.json");
    assert_eq!(code(&hwcoho(&["scramble", "--in", s(&g1), "--seed", "42", "--out", s(&scrambled)])), 0);

    let same = hwcoho(&["rigidity", "--a", s(&g1), "--b", s(&scrambled)]);
    assert_eq!(code(&same), 0);
    let v = json(&same);
    assert_eq!(v["homeomorphic"], true);
    assert_eq!(v["a"]["digits"], v["b"]["digits"]);

    assert_eq!(code(&hwcoho(&["rigidity", "--a", s(&g1), "--b", s(&g2)])), 1);
    assert_eq!(code(&hwcoho(&["rigidity", "--a", s(&g1), "--b", s(&g1)])), 0);
    let d3 = matrix_file(&dir, "d3.json", &dim3());
    assert_eq!(code(&hwcoho(&["rigidity", "--a", s(&g1), "--b", s(&d3)])), 2);
    let small = hwcoho(&["rigidity", "--a", s(&d3), "--b", s(&d3)]);
    assert_eq!(code(&small), 0);
    assert!(json(&small)["note"].as_str().unwrap().contains("dimension 3"));
}

#[test]
fn scramble_is_seeded() {
    let dir = TempDir::new().unwrap();
    let g1 = matrix_file(&dir, "g1.json", &dim5_a());
    let a = hwcoho(&["scramble", "--in", s(&g1), "--seed", "7"]);
    let b = hwcoho(&["scramble", "--in", s(&g1), "--seed", "7"]);
    let c = hwcoho(&["scramble", "--in", s(&g1), "--seed", "8"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn reconstruct_and_canon_from_invariant() {
    let dir = TempDir::new().unwrap();
    let inv = write(&dir, "inv.json", &to_json(&InvariantDoc::from_invariant(&invariant_of(&dim5_b()).unwrap())).unwrap());
    let g2 = matrix_file(&dir, "g2.json", &dim5_b());
    let rec = hwcoho(&["reconstruct", "--in", s(&inv)]);
    assert_eq!(code(&rec), 0);
    let rec_file = write(&dir, "rec.json", &String::from_utf8(rec.stdout).unwrap());
    let c1 = json(&hwcoho(&["canon", "--in", s(&rec_file)]));
    let c2 = json(&hwcoho(&["canon", "--in", s(&g2)]));
    let c3 = json(&hwcoho(&["canon", "--in", s(&inv)]));
    assert_eq!(c1["digits"], c2["digits"]);
    assert_eq!(c1, c3);
}

#[test]
fn verify_suites() {
    let all5 = hwcoho(&["verify", "--dim", "5", "--suite", "all"]);
    assert_eq!(code(&all5), 0, "{}", String::from_utf8_lossy(&all5.stderr));
    assert_eq!(json(&all5)["pass"], true);

    let b7 = json(&hwcoho(&["verify", "--dim", "7", "--suite", "lemmaB"]));
    assert_eq!(b7["pass"], true);
    assert!(b7["suites"][0]["stats"]["max_d"].as_u64().unwrap() <= 8);

    let c3 = hwcoho(&["verify", "--dim", "3", "--suite", "lemmaC"]);
    assert_eq!(code(&c3), 0);
    assert!(json(&c3)["suites"][0]["skipped"].as_str().unwrap().contains("n > 3"));
}
