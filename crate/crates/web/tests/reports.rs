use lambda_inv_web::{decomposition_report, pair_report, series_report};
use serde_json::Value;

#[test]
fn series_lists_every_group_defined_in_the_rank() {
    let v: Value = serde_json::from_str(&series_report("S3", 2).unwrap()).unwrap();
    let groups: Vec<&str> = v["series"].as_array().unwrap().iter().map(|g| g["group"].as_str().unwrap()).collect();
    assert_eq!(groups, ["SL(2)", "O(2)", "SO(2)", "Sp(2)"]);
    assert_eq!(v["series"][2]["text"], "1 + 2t^2 + t^4");
    let odd: Value = serde_json::from_str(&series_report("L3", 5).unwrap()).unwrap();
    assert_eq!(odd["series"].as_array().unwrap().len(), 3);
}

#[test]
fn decomposition_of_binary_cubics() {
    let v: Value = serde_json::from_str(&decomposition_report("S3", 2).unwrap()).unwrap();
    assert_eq!(v[2]["components"], serde_json::json!([["(3,3)", "1"], ["(5,1)", "1"]]));
}

#[test]
fn ternary_cubic_pair() {
    let v: Value = serde_json::from_str(&pair_report(3, 3, 3).unwrap()).unwrap();
    assert_eq!(v["norm"], "20/3");
    assert!(v["v"].as_str().unwrap().starts_with("a1^a2^a3 - 3 a1^a6^a9"));
    assert_eq!(v["basis"].as_array().unwrap().len(), 10);
}

#[test]
fn errors_are_messages() {
    assert!(series_report("S", 2).unwrap_err().contains("position"));
    assert!(pair_report(3, 4, 2).unwrap_err().contains("divide"));
}
