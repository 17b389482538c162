//! Every JSON output validates against the schema shipped in `schemas/`.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn validate(name: &str, doc: &[u8]) {
    let v: Value = serde_json::from_slice(doc).unwrap();
    let errors: Vec<String> = schema(name).iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

fn run(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_riders")).args(args).env_remove("RIDERS_BUDGET").output().unwrap()
}

fn stdout_of(args: &[&str]) -> Vec<u8> {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    o.stdout
}

#[test]
fn count() {
    validate("count", &stdout_of(&["count", "--q", "2", "--n", "1:6"]));
    validate("count", &stdout_of(&["count", "--piece", "nightrider", "--board", "rect:3/2,1", "--q", "3", "--n", "1:5"]));
}

#[test]
fn fit() {
    validate("fit", &stdout_of(&["fit", "--piece", "nightrider", "--q", "2", "--n", "1:14"]));
    validate("fit", &stdout_of(&["fit", "--q", "2", "--n", "1:10", "--labelled"]));
}

#[test]
fn types() {
    validate("types", &stdout_of(&["types", "--q", "2", "--census", "3:5"]));
}

#[test]
fn mobius() {
    validate("mobius", &stdout_of(&["mobius", "--piece", "semiqueen", "--q", "3"]));
    validate("mobius", &stdout_of(&["mobius", "--q", "2", "--check", "1:5"]));
}

#[test]
fn bounds() {
    validate("bounds", &stdout_of(&["bounds", "--piece", "bishop", "--q", "3", "--period-n", "1:18"]));
    validate("bounds", &stdout_of(&["bounds", "--piece", "queen", "--q", "2", "--no-denominator"]));
}

#[test]
fn errors() {
    for args in [
        &["--json-errors", "count", "--q", "2", "--board", "rect:0,1"][..],
        &["--json-errors", "count", "--q", "3", "--n", "20", "--budget", "10"],
        &["--json-errors", "fit", "--q", "2", "--input", "/nonexistent/table.json"],
    ] {
        let o = run(args);
        assert!(!o.status.success());
        validate("error", &o.stderr);
    }
}

#[test]
fn schemas_reject_malformed_documents() {
    let mut v: Value = serde_json::from_slice(&stdout_of(&["count", "--q", "2", "--n", "1:3"])).unwrap();
    v["rows"][0]["labelled"] = Value::from(0);
    assert!(!schema("count").is_valid(&v));
    let mut f: Value = serde_json::from_slice(&stdout_of(&["fit", "--q", "2", "--n", "1:10"])).unwrap();
    f["constituents"][0][1] = Value::from("-0.333");
    assert!(!schema("fit").is_valid(&f));
    f.as_object_mut().unwrap().remove("constituents");
    assert!(!schema("fit").is_valid(&f));
}
