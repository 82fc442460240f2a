use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn floer() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_floer"));
    cmd.env_remove("FLOER_CACHE_DIR");
    cmd
}

fn run(args: &[&str]) -> Output {
    floer().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const POLY_ID: &str = "https://example.org/floer/schemas/poly.schema.json";

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn load(name: &str) -> Value {
    let text = fs::read_to_string(schema_dir().join(name)).expect("schema file");
    serde_json::from_str(&text).expect("schema is JSON")
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let schema = load(schema_name);
    let compiled = JSONSchema::options()
        .with_document(POLY_ID.to_string(), load("poly.schema.json"))
        .compile(&schema)
        .expect("schema compiles");
    if let Err(errors) = compiled.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{schema_name} rejects document: {msgs:?}");
    };
}

#[test]
fn xi_json_example() {
    let out = run(&["xi", "--k", "2", "--n", "1", "--json"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_valid("poly.schema.json", &doc);
    assert_eq!(doc["vars"], serde_json::json!(["alpha", "beta", "gamma"]));
    let terms = doc["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["coeff"], "1/2");
    assert_eq!(terms[0]["exps"], serde_json::json!([2, 0, 0]));
    assert_eq!(terms[1]["coeff"], "-1/2");
    assert_eq!(terms[1]["exps"], serde_json::json!([0, 1, 0]));
}

#[test]
fn jgen_text_lists_four_generators() {
    let out = run(&["jgen", "--g", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "r_1: omega + 1/2*delta - 1");
}

#[test]
fn alpha_coordinates_switch() {
    let out = run(&["jgen", "--g", "1", "--alpha-coords"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("r_1: alpha + delta - 1"), "{text}");
}

#[test]
fn generator_sets_validate() {
    for args in [
        vec!["igen", "--g", "1", "--n", "3", "--parity", "even", "--json"],
        vec!["jgen", "--g", "2", "--sign", "minus", "--json"],
        vec!["jgen", "--g", "1", "--local", "--json"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}");
        assert_valid("generator_set.schema.json", &json_of(&out));
    }
    let out = run(&["solve", "--g", "1", "--n", "3", "--json"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_valid("generator_set.schema.json", &doc["orbit"]);
    assert_valid("poly.schema.json", &doc["correction"]);
}

#[test]
fn hilbert_report_validates() {
    let out = run(&["hilbert", "--g", "0", "--n", "3", "--source", "k", "--max-degree", "10", "--json"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_valid("hilbert_report.schema.json", &doc);
    assert_eq!(doc["match"], true);
    // 4t^2/(1-t^2)^2: degree 2i+2 carries 4(i+1)
    assert_eq!(doc["degrees"][4]["formula"], 8);
}

#[test]
fn eigen_report_validates() {
    let out = run(&["eigen", "--g", "1", "--json"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_valid("eigen_report.schema.json", &doc);
    assert_eq!(doc["subspace_dim"], 2);
    assert_eq!(doc["tuples"][0]["alpha"], "1");
    assert_eq!(doc["tuples"][1]["delta"][0], "2");

    let out = run(&["eigen", "--g", "2", "--theta", "2", "--json", "--timestamps"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_valid("eigen_report.schema.json", &doc);
    assert!(doc["generated_at"].is_u64());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["xi", "--k", "2", "--n", "2"],
        vec!["igen", "--g", "-1", "--n", "3", "--parity", "odd"],
        vec!["eigen", "--g", "1", "--theta", "1/0"],
        vec!["eigen", "--g", "1", "--theta", "abc"],
        vec!["rho", "--k", "2", "--r", "-1", "--method", "projection"],
        vec!["verify", "--suite", "everything"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["solve", "--g", "1", "--json"]);
    let b = run(&["solve", "--g", "1", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_hits_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let fresh = run(&["eigen", "--g", "2", "--json", "--cache-dir", path]);
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(entries.len(), 1);
    let cached = run(&["eigen", "--g", "2", "--json", "--cache-dir", path]);
    assert_eq!(fresh.stdout, cached.stdout);
    let uncached = run(&["eigen", "--g", "2", "--json", "--no-cache"]);
    assert_eq!(fresh.stdout, uncached.stdout);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = floer()
        .env("FLOER_CACHE_DIR", dir.path())
        .args(["xi", "--k", "3", "--n", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("xi__k-3__n-5.json").exists());

    let other = tempfile::tempdir().unwrap();
    floer()
        .env("FLOER_CACHE_DIR", other.path())
        .args(["xi", "--k", "3", "--n", "5", "--no-cache"])
        .output()
        .unwrap();
    assert_eq!(fs::read_dir(other.path()).unwrap().count(), 0);
}

#[test]
fn verify_eigen_suite_passes() {
    let out = run(&["verify", "--suite", "eigen", "--g-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("A2 PASS"), "{text}");
}

#[test]
fn verify_records_rho_convention() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let out = run(&["verify", "--suite", "rho", "--json", "--cache-dir", path]);
    let doc = json_of(&out);
    assert_eq!(doc["rho_convention"], "omega_negated");
    let stored: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("rho_convention.json")).unwrap()).unwrap();
    assert_eq!(stored["payload"]["convention"], "omega_negated");
    let a6 = doc["results"].as_array().unwrap().iter().find(|r| r["id"] == "A6").unwrap();
    assert_eq!(a6["passed"], true);
    // exit status follows the results
    let all_pass = doc["passed"].as_bool().unwrap();
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }));

    // a conflicting recorded branch is flagged
    fs::write(
        dir.path().join("rho_convention.json"),
        serde_json::json!({"key": "rho_convention", "tool_version": env!("CARGO_PKG_VERSION"), "payload": {"convention": "direct"}})
            .to_string(),
    )
    .unwrap();
    let out = run(&["verify", "--suite", "rho", "--json", "--cache-dir", path]);
    let doc = json_of(&out);
    let a6 = doc["results"].as_array().unwrap().iter().find(|r| r["id"] == "A6").unwrap();
    assert_eq!(a6["passed"], false);
    assert_eq!(out.status.code(), Some(1));
}
