//! End-to-end tests of the command-line surface: exit codes, formats and
//! file round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fouradic"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("fouradic-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn params_text_and_json() {
    let out = run(&["params", "--p", "5", "--q", "13"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("g = 2"));
    assert!(text.contains("h = 27"));
    assert!(text.contains("e = 12"));

    let out = run(&["params", "--p", "5", "--q", "13", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["g"], 2);
    assert_eq!(v["h"], 27);
    assert_eq!(v["e"], 12);
}

#[test]
fn params_rejects_invalid_pairs() {
    let out = run(&["params", "--p", "7", "--q", "11"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["params", "--p", "9", "--q", "5"]);
    assert_eq!(out.status.code(), Some(1));
    // usage errors also mean invalid parameters
    let out = run(&["params", "--p", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn complexity_pair_and_consistency() {
    let out = run(&["complexity", "--p", "41", "--q", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("phi_exact = 204"));

    let out = run(&["complexity", "--p", "41", "--q", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["phi_exact"], 204);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["prediction"]["r1"], 11);
    assert_eq!(v["decomposition"]["gcd_q"], "11");
}

#[test]
fn complexity_predict_only() {
    let out = run(&[
        "complexity",
        "--p",
        "5",
        "--q",
        "13",
        "--predict",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["phi_set"], serde_json::json!([65]));
    assert_eq!(v["candidate_d"], 391);
    assert_eq!(v["candidate_prime"], false);
}

#[test]
fn complexity_from_files() {
    // all-zero sequence has complexity 0
    let zeros = temp_path("zeros.txt");
    std::fs::write(&zeros, "0000000000\n").unwrap();
    let out = run(&["complexity", "--in", zeros.to_str().unwrap(), "--m", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("phi_4 = 0"));
    std::fs::remove_file(&zeros).unwrap();

    // generated file round trip, digits encoding
    let seq_file = temp_path("seq-5-13.txt");
    let out = run(&[
        "generate",
        "--p",
        "5",
        "--q",
        "13",
        "--out",
        seq_file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "complexity",
        "--in",
        seq_file.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["phi"], 65);
    std::fs::remove_file(&seq_file).unwrap();

    // structured encoding carries the provenance through the round trip
    let seq_file = temp_path("seq-5-13.json");
    let out = run(&[
        "generate",
        "--p",
        "5",
        "--q",
        "13",
        "--encoding",
        "structured",
        "--out",
        seq_file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&seq_file).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["period"], 65);
    assert_eq!(v["p"], 5);
    assert_eq!(v["q"], 13);
    let out = run(&["complexity", "--in", seq_file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("phi_4 = 65"));
    std::fs::remove_file(&seq_file).unwrap();
}

#[test]
fn complexity_rejects_malformed_file() {
    let bad = temp_path("bad.txt");
    std::fs::write(&bad, "20X1\n").unwrap();
    let out = run(&["complexity", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&bad).unwrap();

    let missing = temp_path("does-not-exist.txt");
    let out = run(&["complexity", "--in", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn scan_deterministic_across_jobs() {
    let out1 = run(&["scan", "--pq-max", "600", "--exact", "--jobs", "1"]);
    assert!(out1.status.success());
    let out2 = run(&["scan", "--pq-max", "600", "--exact", "--jobs", "3"]);
    assert!(out2.status.success());
    assert_eq!(out1.stdout, out2.stdout);

    let text = stdout(&out1);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,q,case,candidate_d,candidate_prime,d_divides,r1,r2,phi_exact,consistent"
    );
    assert!(text
        .lines()
        .any(|l| l.starts_with("5,13,both5,391,false,false,1,1,65,true")));
}

#[test]
fn scan_resumes_from_pq_min() {
    let full = stdout(&run(&["scan", "--pq-max", "800"]));
    let head = stdout(&run(&["scan", "--pq-max", "400"]));
    let tail = stdout(&run(&["scan", "--pq-max", "800", "--pq-min", "401"]));
    let stitched: Vec<&str> = head
        .lines()
        .chain(tail.lines().skip(1)) // drop the second header
        .collect();
    let expect: Vec<&str> = full.lines().collect();
    assert_eq!(stitched, expect);

    let out = run(&["scan", "--pq-max", "100", "--pq-min", "200"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn scan_bound_validation_and_json() {
    let out = run(&["scan", "--pq-max", "10"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["scan", "--pq-max", "300", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(rows.as_array().unwrap().len() >= 4);
    assert_eq!(rows[0]["p"], 5);
    assert_eq!(rows[0]["case_tag"], "both5");
}

#[test]
fn scan_writes_file() {
    let path = temp_path("scan.csv");
    let out = run(&["scan", "--pq-max", "300", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("p,q,case"));
    std::fs::remove_file(&path).unwrap();

    // unwritable destination is an I/O failure
    let out = run(&[
        "scan",
        "--pq-max",
        "300",
        "--out",
        "/nonexistent-dir/scan.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_pass_and_reject() {
    let out = run(&["verify", "--p", "5", "--q", "13", "--lambda-max", "200"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PairSumCounts: pass"));
    assert!(text.contains("6 of 6 checks non-vacuous"));

    let out = run(&["verify", "--p", "7", "--q", "13"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_json_and_lambda_env() {
    let out = run(&[
        "verify",
        "--p",
        "5",
        "--q",
        "13",
        "--lambda-max",
        "200",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["d0s"], serde_json::json!([131]));
    assert_eq!(v["reports"].as_array().unwrap().len(), 6);

    // (5,41) has no cofactor divisor below lambda = 50, so the product
    // checks go vacuous; the env var drives the bound
    let out = bin()
        .args(["verify", "--p", "5", "--q", "41"])
        .env("FOURADIC_LAMBDA_MAX", "50")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("pass (vacuous)"));

    let out = run(&["verify", "--p", "5", "--q", "41", "--lambda-max", "10000"]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains("pass (vacuous)"));
    assert!(stdout(&out).contains("6 of 6 checks non-vacuous"));
}

#[test]
fn cyclotomic_modes() {
    let out = run(&["cyclotomic", "--p", "5", "--q", "13"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("match: true"));
    assert!(text.contains("(a, b) = (1, -4)"));

    let out = run(&[
        "cyclotomic",
        "--p",
        "5",
        "--q",
        "41",
        "--mode",
        "formula",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["a"], 13);
    assert_eq!(v["b"], 3);
    assert_eq!(v["formula"][0][2], 12);

    let out = run(&[
        "cyclotomic",
        "--p",
        "5",
        "--q",
        "13",
        "--mode",
        "brute",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["brute"][0], serde_json::json!([3, 0, 2, 4]));
}

#[test]
fn generate_stdout_digits() {
    let out = run(&["generate", "--p", "5", "--q", "13"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let line = text.trim();
    assert_eq!(line.len(), 65);
    assert!(line.chars().all(|c| ('0'..='3').contains(&c)));
    assert!(line.starts_with('2')); // index 0 carries digit 2
}
