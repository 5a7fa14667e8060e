use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_z2z2u"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("z2z2u-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn analyze_reports_enumerator() {
    let o = run(&["analyze", data("ex3_6.txt").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("x^9 + 3x^3y^6"));
}

#[test]
fn analyze_json_for_two_weight_code() {
    let o = run(&["--json", "analyze", data("ex5_6.txt").to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gray_parameters"], serde_json::json!([24, 5, 12]));
    assert_eq!(v["classification"]["two_lee_weight"], true);
    assert_eq!(v["classification"]["projective"], true);
}

#[test]
fn json_output_is_stable() {
    let a = run(&["--json", "analyze", data("ex5_5.txt").to_str().unwrap()]);
    let b = run(&["--json", "analyze", data("ex5_5.txt").to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn ragged_rows_exit_2() {
    let p = temp_file("ragged.txt", "1 0 | u\n1 | u\n");
    let o = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn dual_of_two_weight_code() {
    let o = run(&["dual", data("ex5_7.txt").to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("enumerator  x^16 + 140x^12y^4 + 448x^10y^6"));
    assert!(out.contains("gray image  [16,11,4]"));
    let o = run(&["dual", data("ex3_6.txt").to_str().unwrap()]);
    assert!(stdout(&o).contains("gray image  [9,7,2]"));
}

#[test]
fn dual_of_zero_code() {
    let p = temp_file("zero.txt", "0 |\n");
    let o = run(&["dual", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("enumerator  x + y"));
}

#[test]
fn gray_and_standard_form() {
    let o = run(&["gray", data("ex3_6.txt").to_str().unwrap()]);
    assert!(stdout(&o).ends_with("# [9,2,6]\n"));
    let o = run(&["standard-form", data("ex3_8.txt").to_str().unwrap()]);
    assert!(stdout(&o).ends_with("# type = (4,5;2,0,1)\n"));
}

#[test]
fn macwilliams_from_enumerator_json() {
    let p = temp_file("enum.json", r#"{"N":16,"counts":[[0,1],[8,30],[16,1]]}"#);
    let o = run(&["macwilliams", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "x^16 + 140x^12y^4 + 448x^10y^6 + 870x^8y^8 + 448x^6y^10 + 140x^4y^12 + y^16\n"
    );
    let bad = temp_file("bad.json", r#"{"N":3,"counts":[[0,1],[1,1],[2,2]]}"#);
    assert_eq!(run(&["macwilliams", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn classify_flags() {
    let o = run(&["--json", "classify", data("ex4_3b.txt").to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classification"]["formally_self_dual"], true);
    assert_eq!(v["classification"]["self_dual"], false);
}

#[test]
fn reproduce_all_passes() {
    let o = run(&["reproduce", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("[DISCREPANCY-KNOWN] 3.6 type: computed (2,0,0), stated (1,0,1)"));
    assert!(out.contains("[DISCREPANCY-KNOWN] 3.7 type: computed (2,0,0), stated (1,0,1)"));
    assert!(out.contains("[PASS] 5.5 dual enumerator: x^14 + 28x^11y^3"));
    assert!(out.trim_end().ends_with("0 failed"));
}

#[test]
fn reproduce_unknown_id() {
    assert_eq!(run(&["reproduce", "9.9"]).status.code(), Some(2));
}

#[test]
fn classification_check() {
    let o = run(&["search", "--verify-classification", "--alpha", "4", "--beta", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("4 survivors, classification matches expected set\n"));
}

#[test]
fn oversized_search_exit_2() {
    let o = run(&["search", "--alpha", "20", "--beta", "20", "--rows", "5", "--mode", "exhaustive"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("too large"));
}

#[test]
fn random_search_is_reproducible() {
    let args = [
        "--json", "--seed", "7", "search", "--target", "one-weight", "--alpha", "4", "--beta", "5", "--rows", "3",
        "--mode", "random", "--budget", "2000",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let last = stdout(&a).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&last).unwrap();
    assert_eq!(v["summary"]["seed"], 7);
}

#[test]
fn two_weight_search_emits_json_lines() {
    let o = run(&["--json", "search", "--target", "two-weight-projective", "--alpha", "2..3", "--beta", "1..2", "--rows", "2"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.len() > 1);
    for hit in &lines[..lines.len() - 1] {
        assert_eq!(hit["classification"]["two_lee_weight"], true);
        assert_eq!(hit["classification"]["projective"], true);
    }
}

#[test]
fn help_documents_exit_codes() {
    let o = run(&["--help"]);
    assert!(stdout(&o).contains("Exit codes:"));
}
