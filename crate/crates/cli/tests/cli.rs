use std::process::{Command, Output};

fn trinomial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trinomial"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn scan_q5_csv_to_stdout() {
    let out = trinomial(&["scan", "--p", "5", "--h", "1", "--threads", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,a_idx,b_idx,is_pp,prima,seconda,prima_bis,seconda_bis,seconda_tris,gcd_deg,main_predicate"
    );
    assert_eq!(lines.count(), 576);
    assert!(String::from_utf8_lossy(&out.stderr).contains("violations=0"));
}

#[test]
fn scan_output_file_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("t{threads}.csv"));
        let out = trinomial(&[
            "scan",
            "--p",
            "7",
            "--h",
            "1",
            "--threads",
            threads,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn sampled_json_summary() {
    let out = trinomial(&[
        "scan",
        "--p",
        "7",
        "--h",
        "2",
        "--sample",
        "2000",
        "--seed",
        "5",
        "--format",
        "json",
        "--summary-only",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["q"], 49);
    assert_eq!(value["pair_count"], 2000);
    assert_eq!(value["sampled"], true);
    assert!(value.get("rows").is_none());
    assert_eq!(value["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn summary_csv_has_one_row() {
    let out = trinomial(&["scan", "--p", "3", "--h", "2", "--summary-only"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("q,p,h,pair_count,pp_count,"));
    assert!(text.lines().nth(1).unwrap().starts_with("9,3,2,6400,30,"));
}

#[test]
fn budget_refusal_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_trinomial"))
        .args(["scan", "--p", "7", "--h", "1"])
        .env("TRINOMIAL_BUDGET_Q", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--sample"));
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(
        trinomial(&["scan", "--p", "6", "--h", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(trinomial(&["scan", "--p", "5"]).status.code(), Some(2));
    assert_eq!(
        trinomial(&["check", "--p", "5", "--h", "1", "--a", "0", "--b", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        trinomial(&["check", "--p", "5", "--h", "1", "--a", "25", "--b", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(trinomial(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_prints_row_json() {
    // a = 1, b = 3: 1 + a + b = 0, so D(1) = 0 and x = 1 is the witness
    let out = trinomial(&[
        "check",
        "--p",
        "5",
        "--h",
        "1",
        "--a",
        "1",
        "--b",
        "3",
        "--diagnostics",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["is_pp"], false);
    assert_eq!(value["a_idx"], 1);
    assert_eq!(value["conditions"]["main_predicate"], false);
    assert_eq!(value["witness"], serde_json::json!([1]));
    assert!(value["diagnostics"]["off_diag_points"].is_u64());
}

#[test]
fn check_permutation_pair() {
    let scan = trinomial(&["scan", "--p", "5", "--h", "1"]);
    let text = stdout(&scan);
    let row: Vec<&str> = text
        .lines()
        .skip(1)
        .find(|l| l.split(',').nth(3) == Some("true"))
        .unwrap()
        .split(',')
        .collect();
    let out = trinomial(&[
        "check",
        "--p",
        "5",
        "--h",
        "1",
        "--a",
        row[1],
        "--b",
        row[2],
        "--diagnostics",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["is_pp"], true);
    assert!(value["witness"].is_null());
    assert_eq!(value["diagnostics"]["off_diag_points"], 0);
}

#[test]
fn selftest_reports_every_criterion() {
    let out = trinomial(&["selftest"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    for (i, line) in lines.iter().enumerate() {
        assert!(
            line.starts_with("[PASS] ") || line.starts_with("[FAIL] "),
            "{line}"
        );
        assert!(line.contains(&format!("AC-{} ", i + 1)), "{line}");
    }
    let all_pass = lines.iter().all(|l| l.starts_with("[PASS]"));
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }));
}
