use std::path::PathBuf;

use serde_json::Value;
use symsphere::catalog::named_state;
use symsphere::cli::{run_captured, to_json_string, EXIT_INPUT, EXIT_OK};
use symsphere::symstate::state_to_json;

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symsphere-cli-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_named(dir: &PathBuf, name: &str) -> String {
    let e = named_state(name, None).unwrap();
    let path = dir.join(format!("{}.json", name.replace(['(', ')', ','], "_")));
    std::fs::write(&path, serde_json::to_string(&state_to_json(&e.state)).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_captured(std::iter::once("symsphere").chain(args.iter().copied()))
}

#[test]
fn analyze_ghz3() {
    let dir = scratch("ghz");
    let f = write_named(&dir, "ghz(3)");
    let (code, out, err) = run(&["analyze", "--state", &f, "--json"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v["e_g"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["cpps"].as_array().unwrap().len(), 2);
    assert_eq!(v["dc_class"], "D_{1,1,1}");
    assert!(v["integral_rel_error"].as_f64().unwrap() < 1e-12);
}

#[test]
fn equiv_ghz4_tetrahedron_is_inequivalent() {
    let dir = scratch("equiv");
    let a = write_named(&dir, "ghz(4)");
    let b = write_named(&dir, "tetrahedron");
    let (code, out, _) = run(&["equiv", "--a", &a, "--b", &b]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("inequivalent"), "{out}");
    let (code, out, _) = run(&["equiv", "--a", &b, "--b", &b, "--relation", "lu", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equivalent"], true);
}

#[test]
fn zero_state_is_an_input_error() {
    let dir = scratch("zero");
    let f = dir.join("zero.json");
    std::fs::write(&f, r#"{"n":2,"dicke":[[0,0],[0,0],[0,0]]}"#).unwrap();
    let (code, out, err) = run(&["analyze", "--state", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.contains("ZeroState"), "{err}");
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
    assert_eq!(run(&["--version"]).0, EXIT_OK);
    assert_eq!(run(&["catalog", "show", "nonesuch"]).0, EXIT_INPUT);
    assert_eq!(run(&["catalog", "show", "ghz"]).0, EXIT_INPUT);
    assert_eq!(run(&["lmg", "--spin", "0.5", "--h", "1"]).0, EXIT_INPUT);
    assert_eq!(run(&["search", "--n", "4", "--family", "mixed"]).0, EXIT_INPUT);
    assert_eq!(run(&["analyze", "--state", "/nonexistent/state.json"]).0, EXIT_INPUT);
    let dir = scratch("res");
    let f = write_named(&dir, "ghz(3)");
    assert_eq!(run(&["sample", "--state", &f, "--function", "vol", "--resolution", "4by4", "--out", "x"]).0, EXIT_INPUT);
}

#[test]
fn json_output_is_deterministic() {
    let dir = scratch("det");
    let f = write_named(&dir, "octahedron");
    let args = ["analyze", "--state", &f, "--json"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let args = ["search", "--n", "4", "--restarts", "2", "--seed", "3", "--json"];
    let (ca, a, _) = run(&args);
    let (cb, b, _) = run(&args);
    assert_eq!((ca, cb), (EXIT_OK, EXIT_OK));
    assert_eq!(a, b);
}

#[test]
fn floats_keep_seventeen_digits() {
    let s = to_json_string(&serde_json::json!({"x": 0.1, "k": 3, "v": [1.0, 2.5]}));
    assert!(s.contains("\"x\": 1.0000000000000001e-1"), "{s}");
    assert!(s.contains("\"k\": 3"));
    let v: Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["x"].as_f64().unwrap(), 0.1);
}

#[test]
fn catalog_show_and_sample() {
    let (code, out, _) = run(&["catalog", "show", "cube", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert!((v["e_g"].as_f64().unwrap() - 4.8f64.log2()).abs() < 1e-6);

    let dir = scratch("sample");
    let f = write_named(&dir, "ghz(3)");
    let out = dir.join("g.csv");
    let (code, _, _) =
        run(&["sample", "--state", &f, "--function", "amp2", "--resolution", "3x4", "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 13);
    // g² at the north pole of GHZ_3 is 1/2
    let first: Vec<f64> = csv.lines().nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert!((first[2] - 0.5).abs() < 1e-12);
}
