use std::process::{Command, Output};

use lambda_invariants::HilbertPolynomial;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambda-inv")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn series_examples() {
    assert_eq!(stdout(&["series", "-m", "S3", "-n", "2", "-g", "so"]), "1 + 2t^2 + t^4\n");
    assert_eq!(
        stdout(&["series", "-m", "L3", "-n", "6", "-g", "o", "-f", "latex"]),
        "1+t^4+2t^8+3t^{10}+2t^{12}+t^{16}+t^{20}\n"
    );
    assert_eq!(stdout(&["series", "-m", "S1", "-n", "4", "-g", "sl"]), "1 + t^4\n");
    assert_eq!(
        stdout(&["series", "-m", "S3", "-n", "3", "-g", "SO", "--extraction", "pruned"]),
        stdout(&["series", "-m", "S3", "-n", "3", "-g", "so"])
    );
}

#[test]
fn json_series_round_trips() {
    let text = stdout(&["series", "-m", "S4", "-n", "3", "-g", "o", "-f", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let parsed: HilbertPolynomial = serde_json::from_value(v["series"].clone()).unwrap();
    let printed: HilbertPolynomial = stdout(&["series", "-m", "S4", "-n", "3", "-g", "o"]).trim().parse().unwrap();
    assert_eq!(parsed, printed);
    assert_eq!(v["group"], "o");
}

#[test]
fn decompose_examples() {
    let s3 = stdout(&["decompose", "-m", "S3", "-n", "2"]);
    assert!(s3.lines().any(|l| l == "degree 2: (3,3) + (5,1)"), "{s3}");
    let s1 = stdout(&["decompose", "-m", "S1", "-n", "3"]);
    assert_eq!(s1, "degree 0: (0)\ndegree 1: (1)\ndegree 2: (1^2)\ndegree 3: (1^3)\n");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["decompose", "-m", "S3", "-n", "2", "-f", "json"])).unwrap();
    assert_eq!(json["degrees"][2]["components"][1]["partition"], serde_json::json!([5, 1]));
    assert_eq!(json["degrees"][2]["components"][1]["multiplicity"], "1");
}

#[test]
fn oracle_examples_and_guard() {
    assert_eq!(stdout(&["oracle", "-m", "S3", "-n", "3", "-g", "sl", "-p", "3"]), "oracle=1 series=1 OK\n");
    assert_eq!(stdout(&["oracle", "-m", "S3", "-n", "2", "-g", "o", "-p", "4"]), "oracle=1 series=1 OK\n");
    let guard = run(&["oracle", "-m", "S3", "-n", "5", "-g", "sl", "-p", "17"]);
    assert_eq!(guard.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&guard.stderr).contains("too large"));
}

#[test]
fn invariant_pair_examples() {
    let out = stdout(&["invariant-pair", "-n", "3", "-k", "3", "-p", "3"]);
    assert!(out.contains("  a10 = e1e2e3\n"));
    assert!(out.contains(
        "v = a1^a2^a3 - 3 a1^a6^a9 + 3 a2^a5^a8 - 3 a3^a4^a7 + 3 a4^a6^a8 - 6 a4^a9^a10 + 6 a5^a6^a10 + 3 a5^a7^a9 + 6 a7^a8^a10\n"
    ));
    assert!(out.contains("+ a4^a5^a6^a7^a8^a9^a10\n"));
    assert!(out.contains("<v,v> = 20/3\n"));

    let binary = stdout(&["invariant-pair", "-n", "2", "-k", "3", "-p", "2"]);
    assert!(binary.contains("v = a1^a2 - 3 a3^a4\n"), "{binary}");

    let zero = run(&["invariant-pair", "-n", "3", "-k", "3", "-p", "2"]);
    assert!(zero.status.success());
    assert!(String::from_utf8_lossy(&zero.stdout).contains("v = 0\n"));
    assert!(String::from_utf8_lossy(&zero.stderr).contains("warning: v = 0"));

    let bad = run(&["invariant-pair", "-n", "3", "-k", "4", "-p", "2"]);
    assert_eq!(bad.status.code(), Some(2));

    let latex = stdout(&["invariant-pair", "-n", "3", "-k", "3", "-p", "3", "-f", "latex"]);
    assert!(latex.contains("- \\frac{1}{3} a_{1} \\wedge a_{2} \\wedge a_{5}"));
}

#[test]
fn tables_subset_and_latex_rows() {
    let out = stdout(&["tables", "-t", "8", "-f", "latex"]);
    assert_eq!(out.lines().last(), Some("1 table: OK"));
    let golden: Vec<String> = lambda_invariants::golden::rows()
        .into_iter()
        .filter(|r| r.table == lambda_invariants::golden::TableId::Table(8))
        .map(|r| r.series)
        .collect();
    for g in golden {
        assert!(out.lines().any(|l| l.split_whitespace().last() == Some(g.as_str())), "{g}");
    }
    let example = stdout(&["tables", "-t", "E4.4"]);
    assert_eq!(example.lines().last(), Some("0 tables + Example 4.4: OK"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["series", "-m", "S3", "-n", "3", "-g", "sp"]).status.code(), Some(2));
    assert_eq!(run(&["series", "-m", "S3+", "-n", "3", "-g", "sl"]).status.code(), Some(2));
    assert_eq!(run(&["series", "-m", "S3", "-n", "3", "-g", "gl"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["series", "-m", "S4", "-n", "4", "-g", "sp"][..],
        &["decompose", "-m", "S2", "-n", "3", "-f", "json"],
        &["invariant-pair", "-n", "2", "-k", "8", "-p", "4"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lambda-inv"))
        .args(["series", "-m", "S3", "-n", "3", "-g", "so"])
        .env("LAMBDA_INV_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 + 3t^3 + 2t^4 + 2t^6 + 3t^7 + t^10\n");
}
