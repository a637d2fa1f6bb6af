use std::process::{Command, Output};

use serde_json::Value;

fn rootspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootspin"))
        .args(args)
        .env_remove("ROOTSPIN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).expect("stdout is one JSON document")
}

#[test]
fn roots_text_is_exact() {
    let out = rootspin(&["roots", "G", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "G 2 6 2 1\n1 0\n0 1\n-1 -1\n1 -1\n1 2\n2 1\n");

    let out = rootspin(&["roots", "F", "4"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "F 4 24 4 2");
    assert_eq!(lines.len(), 25);
    assert_eq!(lines[13], "2 0 0 0");
    assert_eq!(lines[17], "1 1 1 1");
    assert_eq!(lines[24], "1 -1 -1 -1");
}

#[test]
fn exit_codes() {
    assert_eq!(rootspin(&["analyze", "C", "2"]).status.code(), Some(2));
    assert_eq!(rootspin(&["analyze", "Q", "3"]).status.code(), Some(2));
    assert_eq!(rootspin(&["roots", "E", "9"]).status.code(), Some(2));
    assert_eq!(rootspin(&["analyze", "A"]).status.code(), Some(2));
    assert_eq!(rootspin(&["oracle", "E", "6"]).status.code(), Some(3));
    assert_eq!(
        rootspin(&[
            "count",
            "F",
            "4",
            "--method",
            "brute",
            "--brute-limit",
            "20"
        ])
        .status
        .code(),
        Some(3)
    );

    // the partial report is still printed
    let out = rootspin(&["analyze", "E", "6", "--method", "brute", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    let report = json(&out);
    assert_eq!(report["exists"], Value::Bool(true));
    assert_eq!(report["count"]["lower_bound"], 13697920);

    // over the default limit with automatic method selection is not an error
    let out = rootspin(&["analyze", "C", "8", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"]["lower_bound"], 4);
}

#[test]
fn analyze_reports() {
    let out = rootspin(&["analyze", "G", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let g2 = json(&out);
    assert_eq!(g2["count"]["exact"], 4);
    assert_eq!(g2["obstruction"], "pass");
    assert_eq!(g2["certificate"]["lower_bound"], 4);
    assert_eq!(g2["r"], 6);

    let e7 = json(&rootspin(&["analyze", "E", "7", "--json"]));
    assert_eq!(e7["exists"], Value::Bool(false));
    assert_eq!(e7["count"]["zero"], Value::Bool(true));
    assert_eq!(e7["certificate"], Value::Null);

    let f4 = json(&rootspin(&[
        "analyze", "F", "4", "--method", "mitm", "--json",
    ]));
    assert_eq!(f4["count"]["exact"], 34432);
    assert_eq!(f4["method"], "meet_in_middle");

    let line = stdout(&rootspin(&["analyze", "B", "3"]));
    assert!(line.contains("exists=no"), "{line}");
}

#[test]
fn count_certify_oracle() {
    let a4 = json(&rootspin(&["count", "A", "4"]));
    assert_eq!(a4["value"], 24);
    assert_eq!(a4["kind"], "exact");

    let g2 = json(&rootspin(&["certify", "G", "2"]));
    assert_eq!(g2["available"], Value::Bool(true));
    assert_eq!(g2["verified"], Value::Bool(true));
    assert_eq!(g2["blocks"].as_array().unwrap().len(), 2);

    let b4 = json(&rootspin(&["certify", "B", "4"]));
    assert_eq!(b4["available"], Value::Bool(false));

    let d4 = json(&rootspin(&["oracle", "D", "4"]));
    assert_eq!(d4["dimension"], 64);
}

#[test]
fn table_lists_every_family() {
    let out = rootspin(&["table", "--max-r", "24"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for item in 1..=9 {
        assert!(text.contains(&format!("({item})")), "{text}");
    }
    assert_eq!(text.lines().filter(|l| l.starts_with("    ")).count(), 29);
}
