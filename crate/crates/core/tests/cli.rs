use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bessel-series"))
        .args(args)
        .env("LC_ALL", "de_DE.UTF-8")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_all_methods_agree_for_modulus_three() {
    let o = run(&[
        "eval", "--N", "3", "--p", "1", "--x", "2.0", "--method", "all", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = (1.0 + 2.0 * (3f64.sqrt() - 2.0 * std::f64::consts::PI / 3.0).cos()) / 3.0;
    let outcomes = doc["outcomes"].as_array().unwrap();
    let methods: Vec<&str> = outcomes
        .iter()
        .map(|o| o["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, ["theorem1", "oracle", "catalog"]);
    for o in outcomes {
        let re = o["value"][0].as_f64().unwrap();
        let im = o["value"][1].as_f64().unwrap();
        assert!((re - expected).abs() <= 1e-10, "{o}");
        assert!(im.abs() <= 1e-10);
    }
    assert_eq!(doc["diffs"].as_array().unwrap().len(), 3);
}

#[test]
fn eval_even_orders_sum_to_one() {
    let o = run(&[
        "eval", "--N", "2", "--p", "0", "--x", "7.3", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("method,value_re,value_im,est_tail,terms_used")
    );
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(fields[0], "theorem1");
    assert!((fields[1].parse::<f64>().unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn eval_alternating_quarter_vanishes() {
    let o = run(&[
        "eval",
        "--N",
        "4",
        "--p",
        "2",
        "--alternating",
        "--x",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let fields: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(fields[0], "theorem2");
    assert!(fields[1].parse::<f64>().unwrap().abs() <= 1e-12);
}

#[test]
fn eval_complex_argument() {
    let o = run(&[
        "eval",
        "--N",
        "2",
        "--p",
        "1",
        "--alternating",
        "--x",
        "1.0,1.0",
        "--method",
        "all",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["x_im"].as_f64(), Some(1.0));
    for d in doc["diffs"].as_array().unwrap() {
        assert!(d["abs_diff"].as_f64().unwrap() <= 1e-9);
    }
}

#[test]
fn verify_defaults_pass() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).lines().last().unwrap().starts_with("PASS:"));
}

#[test]
fn verify_impossible_tolerance_fails() {
    let o = run(&["verify", "--N-max", "2", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().last().unwrap().starts_with("FAIL:"));
}

#[test]
fn verify_json_restricted_moduli() {
    let o = run(&["verify", "--N-max", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).starts_with("PASS:"));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let records = doc["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        if let Some(n) = r["N"].as_u64() {
            assert!(n <= 3, "{r}");
        }
        for key in ["check", "x_re", "x_im", "abs_diff", "tol", "pass"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
    let summary = &doc["summary"];
    assert_eq!(summary["failed"].as_u64(), Some(0));
    assert_eq!(summary["total"].as_u64(), Some(records.len() as u64));
}

#[test]
fn verify_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&["verify", "--N-max", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(doc["summary"]["total"].as_u64().unwrap() > 0);
}

#[test]
fn table_has_every_catalog_row() {
    let o = run(&["table", "--x", "1.0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 42);
    let text = stdout(&run(&["table", "--x", "1.0"]));
    assert!(text.contains("flagged: printed as"));
}

#[test]
fn plot_data_traces_modulus_three() {
    let o = run(&[
        "plot-data",
        "--N",
        "3",
        "--p",
        "0",
        "--x-min",
        "0",
        "--x-max",
        "20",
        "--steps",
        "400",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.ends_with('\n'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "x,closed_re,closed_im,oracle_re,oracle_im,abs_diff"
    );
    assert_eq!(lines.len(), 402);
    for line in &lines[1..] {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(f.len(), 6);
        let expected = (1.0 + 2.0 * (f[0] * 3f64.sqrt() / 2.0).cos()) / 3.0;
        assert!((f[1] - expected).abs() <= 1e-12, "{line}");
        assert!(f[5] <= 1e-10);
    }
    assert_eq!(lines[401].split(',').next(), Some("20"));
}

#[test]
fn plot_data_single_modulus_is_one() {
    let o = run(&[
        "plot-data",
        "--N",
        "1",
        "--p",
        "0",
        "--x-min",
        "0",
        "--x-max",
        "5",
        "--steps",
        "10",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(lines.len(), 11);
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert!((f[1].parse::<f64>().unwrap() - 1.0).abs() <= 1e-15);
    }
}

#[test]
fn csv_is_locale_independent() {
    let text = stdout(&run(&[
        "plot-data",
        "--N",
        "3",
        "--p",
        "1",
        "--x-min",
        "0.5",
        "--x-max",
        "1.5",
        "--steps",
        "4",
    ]));
    for line in text.lines().skip(1) {
        assert_eq!(line.matches(',').count(), 5, "{line}");
        assert!(line.contains('.'));
        assert!(!line.contains(' '));
    }
    assert!(!text.contains("\r\n"));
}

#[test]
fn exit_codes() {
    let usage = [
        vec!["eval", "--N", "0", "--p", "0", "--x", "1"],
        vec!["eval", "--N", "3", "--p", "0", "--x", "abc"],
        vec!["eval", "--N", "3", "--p", "0", "--x", "nan"],
        vec![
            "eval",
            "--N",
            "3",
            "--p",
            "0",
            "--x",
            "1",
            "--tail-tol",
            "-1",
        ],
        vec![
            "eval", "--N", "7", "--p", "0", "--x", "1", "--method", "catalog",
        ],
        vec!["bogus"],
        vec!["verify", "--N-max", "0"],
    ];
    for args in usage {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    let domain = [
        vec![
            "eval", "--N", "3", "--p", "0", "--x", "1e9", "--method", "oracle",
        ],
        vec![
            "eval", "--N", "3", "--p", "0", "--x", "40,0.5", "--method", "oracle",
        ],
        vec!["eval", "--N", "4", "--p", "0", "--x", "0,1000"],
    ];
    for args in domain {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_file_with_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eval.toml");
    std::fs::write(&path, "N = 2\np = 0\nx = \"7.3\"\nformat = \"csv\"\n").unwrap();
    let o = run(&["--config", path.to_str().unwrap(), "eval", "--p", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let value: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    // --p 1 wins over the file; odd orders cancel in pairs
    assert!(value.abs() <= 1e-12);
}
