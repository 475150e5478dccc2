use std::process::{Command, Output};

use serde_json::Value;

fn mvhodge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvhodge"))
        .args(args)
        .env_remove("MVHODGE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("line is JSON"))
        .collect()
}

#[test]
fn mv_series_matches_golden_fixture() {
    let out = mvhodge(&["mv-series", "--max-weight", "2", "--lambda-order", "6"]);
    assert!(out.status.success());
    let golden = include_str!("fixtures/mv_series_w2_l6.jsonl");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn char_tables() {
    let out = mvhodge(&["char", "1"]);
    let lines = json_lines(&out);
    assert_eq!(lines[2]["values"], serde_json::json!([1]));

    let lines = json_lines(&mvhodge(&["char", "2"]));
    assert_eq!(lines[1]["columns"], serde_json::json!(["2", "1,1"]));
    assert_eq!(lines[2]["values"], serde_json::json!([1, 1]));
    assert_eq!(lines[3]["values"], serde_json::json!([-1, 1]));

    let csv = mvhodge(&["char", "3", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("# {\"command\":\"char\""));
    assert!(text.contains("\"2,1\",-1,0,2"));

    assert_eq!(mvhodge(&["char", "0"]).status.code(), Some(2));
    assert_eq!(mvhodge(&["char", "13"]).status.code(), Some(2));
}

#[test]
fn hodge_genus_zero() {
    let lines = json_lines(&mvhodge(&["hodge", "--genus", "0", "--partition", "3,1"]));
    assert_eq!(
        lines[1]["hodge"],
        serde_json::json!([{"re": "1/4", "im": "0/1"}])
    );
    assert_eq!(lines[1]["partition"], serde_json::json!([3, 1]));
}

#[test]
fn hodge_beyond_truncation_is_usage_error() {
    let out = mvhodge(&[
        "hodge",
        "--genus",
        "0",
        "--partition",
        "4,3",
        "--max-weight",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hurwitz_methods_agree() {
    for method in ["char", "brute", "connected"] {
        let lines = json_lines(&mvhodge(&[
            "hurwitz",
            "--genus",
            "1",
            "--partition",
            "2",
            "--method",
            method,
        ]));
        assert_eq!(lines[1]["value"], "1/2", "{method}");
    }
    let lines = json_lines(&mvhodge(&[
        "hurwitz",
        "--genus",
        "0",
        "--partition",
        "2,1",
        "--disconnected",
    ]));
    assert_eq!(lines[1]["connected"], false);
}

#[test]
fn budget_exceeded_exits_3() {
    let out = mvhodge(&[
        "hurwitz",
        "--genus",
        "2",
        "--partition",
        "4",
        "--method",
        "brute",
        "--budget",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn budget_env_override_is_echoed() {
    let out = Command::new(env!("CARGO_BIN_EXE_mvhodge"))
        .args(["hurwitz", "--genus", "0", "--partition", "2"])
        .env("MVHODGE_BUDGET", "1234")
        .output()
        .unwrap();
    let lines = json_lines(&out);
    assert_eq!(lines[0]["config"]["budget"], 1234);
    assert_eq!(lines[0]["config"]["budget_source"], "env:MVHODGE_BUDGET");
}

#[test]
fn verify_prop_v_and_unknown_suite() {
    let out = mvhodge(&["verify", "--suite", "prop-v"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    let checks: Vec<&Value> = lines.iter().filter(|l| l.get("suite").is_some()).collect();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["passed"] == true));
    assert_eq!(lines.last().unwrap()["summary"]["failed"], 0);

    assert_eq!(
        mvhodge(&["verify", "--suite", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_records_sorted_within_suite() {
    let lines = json_lines(&mvhodge(&["verify", "--suite", "characters"]));
    let ids: Vec<&str> = lines.iter().filter_map(|l| l["id"].as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}
