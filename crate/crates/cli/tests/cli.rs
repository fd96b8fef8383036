use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["whc"];
    full.extend_from_slice(args);
    let code = whc_cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("whc-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const K22: &str = "p bip 2 2\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n";
const C6: &str = "c six-cycle\np bip 3 3\ne 1 1\ne 2 1\ne 2 2\ne 3 2\ne 3 3\ne 1 3\n";

#[test]
fn check_k22_structured() {
    let path = temp_file("k22.txt", K22);
    let (code, out, _) = run(&["check", path.to_str().unwrap(), "--oracle", "--format", "structured"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["graph"]["n"], 2);
    assert_eq!(v["graph"]["e"], 4);
    assert_eq!(v["graph"]["sigma"], Value::Null);
    assert_eq!(v["oracle"]["weakly_hc"], true);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 13);
    for verdict in verdicts {
        assert_ne!(verdict["confidence"], "inconclusive");
        for key in ["id", "applicable", "satisfied", "certified", "confidence", "detail"] {
            assert!(verdict.get(key).is_some(), "missing {key}");
        }
    }
    assert_eq!(verdicts[0]["id"], "pair_sum");
    assert_eq!(verdicts[0]["certified"], true);
}

#[test]
fn check_c6_has_no_certificates() {
    let path = temp_file("c6.txt", C6);
    let (code, out, _) = run(&["check", path.to_str().unwrap(), "--oracle", "--format", "structured"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["verdicts"].as_array().unwrap().iter().all(|x| x["certified"] == false));
    assert_eq!(v["oracle"]["weakly_hc"], false);
    assert_eq!(v["oracle"]["failing_pair"], serde_json::json!([1, 2]));
}

#[test]
fn check_single_group() {
    let path = temp_file("c6-group.txt", C6);
    let (code, out, _) = run(&["check", path.to_str().unwrap(), "--condition", "degree_sequence"]);
    assert_eq!(code, 0);
    assert!(out.contains("degree_sequence"));
    assert!(!out.contains("pair_sum"));
    let (code, _, err) = run(&["check", path.to_str().unwrap(), "--condition", "nope"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown condition"));
}

#[test]
fn parse_errors_report_line_and_exit_1() {
    let path = temp_file("bad.txt", "p bip 2 2\ne 3 1\n");
    let (code, _, err) = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");
    let (code, _, err) = run(&["oracle", "/nonexistent/graph.txt"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(run(&["verify", "--condition", "all", "--n", "3"]).0, 1);
    assert_eq!(run(&["verify", "--condition", "all", "--n", "3", "--exhaustive", "--random", "5"]).0, 1);
    assert_eq!(run(&["bogus"]).0, 1);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("--format"));
    let (code, out, _) = run(&["verify", "--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("[default: 0]"));
    assert_eq!(run(&["--tol", "0", "construct", "K", "--n", "2"]).0, 1);
}

#[test]
fn construct_round_trips_through_check() {
    for (family, extra) in [("K", vec!["--n", "3", "--m", "2"]), ("Q", vec!["--n", "5", "--t", "2"]), ("R", vec!["--n", "5", "--t", "2"]), ("S", vec!["--n", "4", "--t", "3"])] {
        let mut args = vec!["construct", family];
        args.extend(extra);
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{err}");
        let g = whc_cli::format::parse_graph_file(&out).unwrap();
        assert!(g.edge_count() > 0);
    }
    let (code, _, err) = run(&["construct", "Q", "--n", "5", "--t", "4"]);
    assert_eq!(code, 1);
    assert!(err.contains("Q"), "{err}");
    assert_eq!(run(&["construct", "Q", "--n", "5"]).0, 1);
    assert_eq!(run(&["construct", "Q", "--n", "5", "--t", "2", "--m", "3"]).0, 1);
}

#[test]
fn construct_writes_output_file() {
    let path = temp_file("r52.txt", "");
    let (code, out, _) = run(&["construct", "R", "--n", "5", "--t", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let g = whc_cli::format::parse_graph_file(&text).unwrap();
    assert_eq!(g.edge_count(), 19);
}

#[test]
fn oracle_closure_spectrum_commands() {
    let path = temp_file("c6-cmds.txt", C6);
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["oracle", p]);
    assert_eq!(code, 0);
    assert!(out.contains("no Hamilton path from x1 to y2"));

    let k22 = temp_file("k22-w.txt", K22);
    let (_, out, _) = run(&["oracle", k22.to_str().unwrap(), "--witnesses", "--format", "structured"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witness_paths"].as_array().unwrap().len(), 4);
    assert_eq!(v["witness_paths"][0]["path"], serde_json::json!(["x1", "y2", "x2", "y1"]));

    let (code, out, _) = run(&["closure", p, "--format", "structured"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["added_edges"], serde_json::json!([]));
    assert_eq!(v["complete"], false);

    let (code, out, _) = run(&["spectrum", p, "--format", "structured"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v["rho"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((v["q"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert_eq!(v["bounds"]["rho_lower"]["holds"], true);
}

#[test]
fn verify_n3_reports_no_violations() {
    let (code, out, _) = run(&["verify", "--condition", "all", "--n", "3", "--exhaustive", "--format", "structured"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 512);
    assert_eq!(v["violations"], serde_json::json!([]));
    assert_eq!(v["sandwich"]["discrepancies"], serde_json::json!([]));
    assert!(v.get("elapsed").is_none());
    let (code, _, err) = run(&["verify", "--condition", "all", "--n", "5", "--exhaustive"]);
    assert_eq!(code, 1);
    assert!(err.contains("override"), "{err}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_whc");
    let path = temp_file("k22-bin.txt", K22);
    let status = Command::new(bin).args(["check", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    let bad = temp_file("bad-bin.txt", "p bip 2 2\ne 1 x\n");
    let status = Command::new(bin).args(["check", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&status.stderr).contains("line 2"));
}
