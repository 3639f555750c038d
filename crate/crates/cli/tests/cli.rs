//! End-to-end checks of the `kneserb` binary: output formats, exit codes,
//! and error diagnostics.

use std::io::Write;
use std::process::{Command, Output};

fn kneserb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kneserb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn color_header_and_record_shape() {
    let out = kneserb(&["color", "10", "3"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        r#"{"m":10,"n":3,"colors":20,"construction":"case1"}"#
    );
    assert_eq!(
        lines.next().unwrap(),
        r#"{"vertex":[0,1,2],"color":{"subset":[0,1,2]}}"#
    );
    assert_eq!(text.lines().count(), 1 + 120);
}

#[test]
fn color_small_case_output() {
    let out = kneserb(&["color", "6", "3"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let header: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(header["colors"], 2);
    assert_eq!(header["construction"], "small");
    assert_eq!(text.lines().count(), 1 + 20);
}

#[test]
fn color_rejects_unsupported_n() {
    let out = kneserb(&["color", "8", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("n >= 3"));
}

#[test]
fn color_rejects_invalid_params() {
    let out = kneserb(&["color", "5", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construction_tags_cover_all_cases() {
    for (m, n, tag) in [
        (10u32, 3u32, "case1"),
        (12, 4, "case2"),
        (11, 3, "case3"),
        (13, 4, "case3"),
        (6, 3, "small"),
        (7, 3, "small"),
    ] {
        let out = kneserb(&["color", &m.to_string(), &n.to_string()]);
        assert!(out.status.success());
        let text = stdout_str(&out);
        let header: serde_json::Value =
            serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(header["construction"], tag, "KG({m},{n})");
    }
}

#[test]
fn verify_round_trip_reproduces_in_memory_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let out = kneserb(&["color", "10", "3", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());

    let verify_out = kneserb(&["verify", path.to_str().unwrap()]);
    assert_eq!(verify_out.status.code(), Some(0));

    // the same report, computed in-process
    let p = kneser_b::KneserParams::new(10, 3).unwrap();
    let coloring = kneser_b::construction::build(p).unwrap();
    let report = kneser_b::verify::is_b_coloring(&coloring);
    let expected =
        serde_json::to_string(&kneser_b_cli::format::report_json(p, &report)).unwrap() + "\n";
    assert_eq!(stdout_str(&verify_out), expected);
}

#[test]
fn verify_flags_improper_file() {
    // constant coloring of the Petersen graph: every edge is a violation
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, r#"{{"m":5,"n":2,"colors":1,"construction":"small"}}"#).unwrap();
    let p = kneser_b::KneserParams::new(5, 2).unwrap();
    for v in kneser_b::kneser::vertices(p) {
        writeln!(
            f,
            r#"{{"vertex":{:?},"color":{{"synthetic":0}}}}"#,
            v.elements()
        )
        .unwrap();
    }
    drop(f);

    let out = kneserb(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(report["proper"], false);
    assert_eq!(report["is_b"], false);
    assert_eq!(report["counterexample"][0], serde_json::json!([0, 1]));
    assert_eq!(report["counterexample"][1], serde_json::json!([2, 3]));
}

#[test]
fn verify_rejects_truncated_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trunc.jsonl");
    let full = stdout_str(&kneserb(&["color", "6", "3"]));
    let truncated: Vec<&str> = full.lines().take(10).collect();
    std::fs::write(&path, truncated.join("\n")).unwrap();

    let out = kneserb(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("incomplete assignment"));
}

#[test]
fn verify_rejects_malformed_line_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("malformed.jsonl");
    let full = stdout_str(&kneserb(&["color", "6", "3"]));
    let mut lines: Vec<String> = full.lines().map(String::from).collect();
    lines[4] = "{\"vertex\":[0,1".to_string();
    std::fs::write(&path, lines.join("\n")).unwrap();

    let out = kneserb(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("line 5"));
}

#[test]
fn verify_rejects_duplicate_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.jsonl");
    let full = stdout_str(&kneserb(&["color", "6", "3"]));
    let mut lines: Vec<String> = full.lines().map(String::from).collect();
    lines[2] = lines[1].clone();
    std::fs::write(&path, lines.join("\n")).unwrap();

    let out = kneserb(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("appears twice"));
}

#[test]
fn verify_rejects_missing_file() {
    let out = kneserb(&["verify", "/nonexistent/nope.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_json_is_stable() {
    let out = kneserb(&["bounds", "10", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out), "{\"lower\":20,\"upper\":36}\n");

    let out = kneserb(&["bounds", "6", "3"]);
    assert_eq!(stdout_str(&out), "{\"lower\":2,\"upper\":2}\n");
}

#[test]
fn brute_petersen() {
    let out = kneserb(&["brute", "5", "2"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(json["exact"], 3);
    assert_eq!(json["lower"], 3);
    assert_eq!(json["upper"], 4);
    assert!(json.get("interval").is_none());
}

#[test]
fn brute_respects_cap() {
    let out = kneserb(&["brute", "10", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("cap"));

    // raising the cap lets the matching case through
    let out = kneserb(&["brute", "10", "3", "--cap", "200", "--max-nodes", "100000"]);
    assert!(out.status.success() || out.status.code() == Some(0));
}

#[test]
fn brute_interval_under_tiny_budget() {
    let out = kneserb(&["brute", "5", "2", "--max-nodes", "5"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert!(json.get("exact").is_none());
    let interval = json["interval"].as_array().unwrap();
    assert!(interval[0].as_u64().unwrap() <= 3);
    assert!(3 <= interval[1].as_u64().unwrap());
}

#[test]
fn export_dot_petersen() {
    let out = kneserb(&["export-dot", "5", "2"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.starts_with("graph kneser_5_2 {"));
    let nodes = text
        .lines()
        .filter(|l| l.ends_with("\";") && !l.contains(" -- "))
        .count();
    let edges = text.lines().filter(|l| l.contains(" -- ")).count();
    assert_eq!(nodes, 10);
    assert_eq!(edges, 15);
}

#[test]
fn export_dot_refuses_large_graphs() {
    let out = kneserb(&["export-dot", "10", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("capped"));
}

#[test]
fn thread_count_does_not_change_output() {
    let default = kneserb(&["color", "12", "4"]);
    let single = kneserb(&["--threads", "1", "color", "12", "4"]);
    let double = kneserb(&["--threads", "2", "color", "12", "4"]);
    assert!(default.status.success());
    assert_eq!(default.stdout, single.stdout);
    assert_eq!(default.stdout, double.stdout);
}

#[test]
fn env_var_sets_threads() {
    let out = Command::new(env!("CARGO_BIN_EXE_kneserb"))
        .env("KNESERB_THREADS", "1")
        .args(["color", "10", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(out.stdout, kneserb(&["color", "10", "3"]).stdout);
}
