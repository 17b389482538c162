//! End-to-end runs of the `riders` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn riders(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riders"))
        .args(args)
        .env_remove("RIDERS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("riders-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn two_queens_csv() {
    let o = riders(&["count", "--q", "2", "--n", "1:6", "--format", "csv"]);
    assert!(o.status.success());
    let want = "n,labelled,unlabelled,method\n\
                1,0,0,brute_force\n\
                2,0,0,brute_force\n\
                3,16,8,brute_force\n\
                4,88,44,brute_force\n\
                5,280,140,brute_force\n\
                6,680,340,brute_force\n";
    assert_eq!(stdout(&o), want);
}

#[test]
fn nightrider_fit_json() {
    let v = json(&riders(&["fit", "--piece", "nightrider", "--q", "2", "--n", "1:14"]));
    assert_eq!(v["period"], 2);
    assert_eq!(v["degree"], 4);
    assert_eq!(v["constituents"][0], serde_json::json!(["0/1", "-2/3", "3/2", "-5/6", "1/2"]));
    assert_eq!(v["constituents"][1], serde_json::json!(["0/1", "-7/6", "3/2", "-5/6", "1/2"]));
    assert_eq!(v["value_at_minus_one"], "4/1");
    assert_eq!(v["verified_on"], serde_json::json!([1, 14]));
}

#[test]
fn custom_moves_match_preset() {
    let a = riders(&["count", "--q", "2", "--n", "1:5", "--moves", "0,1;1,0", "--format", "csv"]);
    let b = riders(&["count", "--q", "2", "--n", "1:5", "--piece", "rook", "--format", "csv"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["count", "--q", "2", "--board", "rect:0,1"][..],
        &["count", "--q", "2", "--n", "5:1"],
        &["count", "--q", "2", "--moves", "2,2"],
        &["count", "--q", "2", "--format", "xml"],
        &["types", "--q", "2", "--format", "csv"],
        &["verify", "--suite", "other"],
        &["count"],
    ] {
        let o = riders(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn capacity_exit_3_with_json_error() {
    let o = riders(&["--json-errors", "count", "--q", "3", "--n", "20", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "capacity");
    assert_eq!(v["error"]["exit_code"], 3);
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_riders"))
        .args(["count", "--q", "3", "--n", "20"])
        .env("RIDERS_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["count", "--piece", "queen", "--q", "3", "--n", "1:9"];
    let a = riders(&[&args[..], &["--threads", "1"]].concat());
    let b = riders(&[&args[..], &["--threads", "4"]].concat());
    let c = riders(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let m1 = riders(&["mobius", "--piece", "nightrider", "--q", "3"]);
    let m2 = riders(&["mobius", "--piece", "nightrider", "--q", "3"]);
    assert_eq!(m1.stdout, m2.stdout);
}

#[test]
fn print_config_round_trips() {
    let o = riders(&["count", "--piece", "bishop", "--board", "rect:3,2", "--q", "2", "--n", "2:5", "--format", "csv", "--print-config"]);
    assert!(o.status.success());
    let line = stdout(&o);
    let path = tmp("run.cfg");
    std::fs::write(&path, &line).unwrap();
    let p = path.to_str().unwrap();
    let again = riders(&["count", "--q", "1", "--config", p, "--print-config"]);
    assert_eq!(stdout(&again), line);
    let direct = riders(&["count", "--piece", "bishop", "--board", "rect:3,2", "--q", "2", "--n", "2:5", "--format", "csv"]);
    let from_file = riders(&["count", "--q", "1", "--config", p]);
    assert_eq!(direct.stdout, from_file.stdout);
}

#[test]
fn fit_from_saved_table() {
    let counted = riders(&["count", "--q", "2", "--n", "1:10"]);
    let path = tmp("queens.json");
    std::fs::write(&path, &counted.stdout).unwrap();
    let from_file = json(&riders(&["fit", "--q", "2", "--input", path.to_str().unwrap()]));
    let direct = json(&riders(&["fit", "--q", "2", "--n", "1:10"]));
    assert_eq!(from_file, direct);
    assert_eq!(direct["constituents"][0], serde_json::json!(["0/1", "-1/3", "3/2", "-5/3", "1/2"]));
}

#[test]
fn mobius_check_against_brute_force() {
    let v = json(&riders(&["mobius", "--piece", "queen", "--q", "3", "--check", "1:6"]));
    assert_eq!(v["check"]["all_equal"], true);
    assert_eq!(v["class_sizes_hold"], true);
    let sum: i64 = v["flats"].as_array().unwrap().iter().map(|f| f["mobius"].as_i64().unwrap().abs()).sum();
    assert_eq!(sum, 216);
}

#[test]
fn three_queens_types() {
    let v = json(&riders(&["types", "--q", "3", "--n", "1:18", "--period", "2", "--census", "6:6"]));
    assert_eq!(v["types_count"]["unlabelled"], "36");
    assert_eq!(v["types_count"]["labelled"], "216");
    assert_eq!(v["census"][0]["unlabelled"], "36");
    assert_eq!(v["census_agrees"], true);
}

#[test]
fn bishop_bounds() {
    let v = json(&riders(&["bounds", "--piece", "bishop", "--q", "3", "--period-n", "1:18"]));
    assert_eq!(v["denominator"], "2");
    assert_eq!(v["lcmd"], "4");
    assert_eq!(v["period_observed"], 2);
}
