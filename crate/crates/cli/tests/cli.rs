use std::process::{Command, Output};

use bohrlab::radii::{radius, table1, RadiusId, RadiusParams, RadiusQuery, DEFAULT_TOL};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohrlab")).args(args).output().unwrap()
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohrlab")).args(args).env(key, value).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(code(out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(out.stdout.as_slice());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn comments(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout).lines().filter(|l| l.starts_with('#')).map(String::from).collect()
}

#[test]
fn radius_values() {
    let v = json(&run(&["radius", "--id", "theoremD_rstar"]));
    assert!((v["value"].as_f64().unwrap() - 0.24683).abs() < 1e-5);
    assert!(v["bracket"].as_array().unwrap().len() == 2);
    assert!(v["iterations"].as_u64().unwrap() > 0);
    let v = json(&run(&["radius", "--id", "theorem4_rho", "--a0", "0.5"]));
    assert_eq!(v["value"].as_f64().unwrap(), 0.25);
    assert_eq!(v["params"]["a0"].as_f64().unwrap(), 0.5);
    let v = json(&run(&["radius", "--id", "corollary7_Rpm", "--p", "1", "--m", "0"]));
    assert!((v["value"].as_f64().unwrap() - 0.618034).abs() < 1e-6);
}

#[test]
fn radius_json_is_full_precision() {
    let v = json(&run(&["radius", "--id", "theorem2_Rpmq", "--p", "1", "--q", "2", "--m", "2"]));
    let q = RadiusQuery::new(
        RadiusId::Theorem2Rpmq,
        RadiusParams { p: Some(1.0), q: Some(2.0), m: Some(2), ..Default::default() },
    );
    assert_eq!(v["value"].as_f64().unwrap(), radius(&q, DEFAULT_TOL).unwrap().value);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["radius", "--id", "theorem1_Rp"])), 2);
    assert_eq!(code(&run(&["radius", "--id", "no_such_radius"])), 2);
    assert_eq!(code(&run(&["radius", "--id", "theorem4_rho", "--a0", "1.5"])), 2);
    assert_eq!(code(&run(&["radius", "--id", "theorem1_R1", "--p", "1", "--weights", "odd"])), 3);
    assert_eq!(code(&run(&["radius", "--id", "theoremD_rstar", "--bogus"])), 2);
    assert_eq!(code(&run(&["eval", "--functional", "Mf", "--function", "phi:a=2", "--r", "0.5"])), 2);
    assert_eq!(code(&run(&["eval", "--functional", "nope", "--function", "phi:a=0.5", "--r", "0.5"])), 2);
    assert_eq!(code(&run(&["verify", "--theorem", "no_such_theorem"])), 2);
}

#[test]
fn table1_csv_round_trip() {
    let out = run(&["table1"]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["p", "q", "m", "radius", "printed", "diff"]);
    assert_eq!(rows.len(), 24);
    let expected = table1(DEFAULT_TOL).unwrap();
    for (row, want) in rows.iter().zip(&expected) {
        let got: f64 = row[3].parse().unwrap();
        assert_eq!(row[3], format!("{:.6}", want.radius));
        assert!((got - want.radius).abs() <= 5e-7);
    }
    let find = |p: &str, q: &str, m: &str| rows.iter().find(|r| r[0] == p && r[1] == q && r[2] == m).unwrap().clone();
    assert_eq!(find("1", "2", "1")[3], "0.236068");
    assert_eq!(find("1", "1", "2")[3], "0.289898");
    // the printed value is truncated; the computed radius rounds to 0.200000
    let row = find("0.5", "1", "10");
    assert_eq!(row[4], "0.199999");
    assert!((row[3].parse::<f64>().unwrap() - 0.199999).abs() <= 1e-5);
    let notes = comments(&out);
    assert!(notes.iter().any(|l| l.starts_with("# max_abs_diff=")));
    assert!(notes.iter().any(|l| l == "# weights=geometric"));
}

#[test]
fn eval_values() {
    let v = json(&run(&["eval", "--functional", "Mf", "--function", "phi:a=0.5", "--r", "0.5"]));
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    let v = json(&run(&["eval", "--functional", "area_ratio", "--function", "psi:a=0.5", "--r", "0.4"]));
    assert!((v["value"].as_f64().unwrap() - 0.226757).abs() < 1e-6);
    let v = json(&run(&["eval", "--functional", "Af", "--function", "mono:k=1", "--r", "0.3"]));
    assert!((v["value"].as_f64().unwrap() + 0.3).abs() < 1e-15);
    assert!(v["tail_budget"].as_f64().unwrap() >= 0.0);
    let out = run(&["eval", "--functional", "Mf", "--function", "phi:a=0.5", "--r", "0.5", "--format", "csv"]);
    let (_, rows) = csv_rows(&out);
    assert_eq!(rows[0][3], "1.000000");
    assert!(comments(&out).iter().any(|l| l == "# r=0.5"));
}

#[test]
fn sweep_matches_closed_form() {
    let out = run(&["sweep", "--id", "theorem1_Rp", "--param", "a0", "--p", "2", "--from", "0", "--to", "0.9", "--step", "0.1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["a0", "radius", "trend"]);
    assert_eq!(rows.len(), 10);
    for row in &rows {
        let a0: f64 = row[0].parse().unwrap();
        let r: f64 = row[1].parse().unwrap();
        assert!((r - (1.0 + a0) / (3.0 + a0)).abs() <= 5e-7);
    }
    let notes = comments(&out);
    assert!(notes.iter().any(|l| l == "# monotonicity=increasing"));
    assert!(notes.iter().any(|l| l == "# p=2.0"));

    let out = run(&["sweep", "--id", "theorem4_rho", "--param", "a0", "--from", "0", "--to", "0.95", "--step", "0.05"]);
    let (_, rows) = csv_rows(&out);
    let values: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(values[0], 0.2);
    assert!(values.iter().all(|v| (0.2..1.0 / 3.0).contains(v)));

    let out = run(&["sweep", "--id", "theoremD_r0", "--param", "a0", "--from", "0.05", "--to", "0.95", "--step", "0.15"]);
    let (_, rows) = csv_rows(&out);
    assert!(rows.iter().all(|r| {
        let v: f64 = r[1].parse().unwrap();
        v > 0.24683 && v < 1.0 / 3.0
    }));

    let out = run(&["sweep", "--id", "theoremD_rstar", "--param", "a0", "--from", "0", "--to", "0.5", "--step", "0.1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_examples() {
    let a = run(&["verify", "--theorem", "theoremA", "--samples", "200", "--seed", "7"]);
    let v = json(&a);
    assert_eq!(v["result"]["passed"], Value::Bool(true));
    assert_eq!(v["params"]["seed"].as_u64(), Some(7));
    assert_eq!(code(&run(&["verify", "--theorem", "corollary6", "--samples", "200", "--seed", "7"])), 0);
    let v = json(&run(&["verify", "--theorem", "theorem5_I", "--p", "1", "--m", "0", "--samples", "40"]));
    let notes = v["result"]["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("boundary equality at r = 0.618034")));
}

#[test]
fn verify_reports_missing_witness() {
    // the lacunary bound with m = 1 is not attained, so its probe finds nothing
    let out = run(&["verify", "--theorem", "lemma2", "--p", "2", "--m", "1", "--samples", "20"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no sharpness witness"));
}

#[test]
fn thread_setting_does_not_change_results() {
    let args = ["verify", "--theorem", "theorem1_i", "--samples", "30", "--no-sharpness"];
    let strip = |mut v: Value| {
        v["result"]["report"]["elapsed_secs"] = Value::Null;
        v
    };
    let seq = strip(json(&run_env(&args, "BOHRLAB_THREADS", "0")));
    let par = strip(json(&run_env(&args, "BOHRLAB_THREADS", "3")));
    assert_eq!(seq, par);
}

#[test]
fn probes_and_equalities() {
    let v = json(&run(&["probe", "--id", "theoremA"]));
    assert_eq!(v["found"], Value::Bool(true));
    assert!(v["best_excess"].as_f64().unwrap() >= 1e-6);
    let v = json(&run(&["equality", "--case", "lemma1_psi", "--a", "0.3", "--r", "0.6"]));
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(code(&run(&["equality", "--case", "nope"])), 2);
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("bohrlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rho.json");
    let out = run(&["radius", "--id", "theorem4_rho", "--a0", "0.25", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["value"].as_f64().unwrap(), 1.0 / 4.5);
    std::fs::remove_dir_all(&dir).unwrap();
}
