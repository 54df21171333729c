use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn wabl(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_wabl"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).expect("machine output is JSON")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn discrete_example_with_breakdown() {
    let run = wabl(&[
        "compute",
        &fixture("discrete_example.json"),
        "--c",
        "0.2",
        "--weights",
        &fixture("discrete_example_weights.json"),
        "--verbose",
        "--format",
        "machine",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    let result = &v["records"][0]["result"];
    assert!((result["value"].as_f64().unwrap() - 1.3).abs() <= 1e-12);
    assert_eq!(result["path"], "general-summation");
    let means: Vec<f64> = result["breakdown"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["mean"].as_f64().unwrap())
        .collect();
    for (got, want) in means.iter().zip([-0.6, 1.0, 1.8, 1.6, 2.0]) {
        assert!((got - want).abs() <= 1e-12);
    }
}

#[test]
fn discrete_example_text() {
    let run = wabl(&[
        "compute",
        &fixture("discrete_example.json"),
        "--c",
        "0.2",
        "--weights",
        &fixture("discrete_example_weights.json"),
        "--verbose",
    ]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("A   1.3   general-summation"), "{}", run.stdout);
    assert!(run.stdout.contains("0.1    0.1  -2  5  -0.6"), "{}", run.stdout);
}

#[test]
fn trapezoid_and_triangle_examples() {
    let run = wabl(&["compute", &fixture("trapezoid_example.json"), "--c", "0.8", "--k", "0", "--t", "4"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("A   17.6  closed-constant"), "{}", run.stdout);

    let dir = tempfile::tempdir().unwrap();
    let doc = write_temp(&dir, "tri.json", r#"[{"id": "T", "type": "triangle", "params": [0, 1, 2]}]"#);
    let run = wabl(&["compute", &doc, "--c", "0.5", "--k", "0", "--t", "4", "--format", "machine"]);
    assert_eq!(json(&run)["records"][0]["result"]["value"].as_f64(), Some(1.0));
}

#[test]
fn force_summation_changes_path_not_value() {
    let args = |force: bool| {
        let mut a = vec![
            "compute".to_string(),
            fixture("trapezoid_example.json"),
            "--c".into(),
            "0.8".into(),
            "--k".into(),
            "1".into(),
            "--t".into(),
            "4".into(),
            "--format".into(),
            "machine".into(),
        ];
        if force {
            a.push("--force-summation".into());
        }
        a
    };
    let closed = wabl(&args(false).iter().map(String::as_str).collect::<Vec<_>>());
    let summed = wabl(&args(true).iter().map(String::as_str).collect::<Vec<_>>());
    let closed = json(&closed)["records"][0]["result"].clone();
    let summed = json(&summed)["records"][0]["result"].clone();
    assert_eq!(closed["path"], "closed-linear");
    assert_eq!(summed["path"], "general-summation");
    assert!((closed["value"].as_f64().unwrap() - 16.2).abs() <= 1e-12);
    assert!((summed["value"].as_f64().unwrap() - 16.2).abs() <= 1e-12);
}

#[test]
fn rank_examples() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_temp(
        &dir,
        "two.json",
        r#"[{"id": "B", "type": "trapezoid", "params": [0, 1, 1, 2]},
            {"id": "A", "type": "trapezoid", "params": [10, 14, 15, 23]}]"#,
    );
    let run = wabl(&["rank", &doc, "--c", "0.8", "--k", "0", "--t", "4", "--format", "machine"]);
    assert_eq!(run.code, 0);
    let ranking = json(&run)["ranking"].clone();
    assert_eq!(ranking[0]["id"], "A");
    assert_eq!(ranking[0]["rank"], 1);
    assert_eq!(ranking[1]["id"], "B");
    assert_eq!(ranking[1]["rank"], 2);

    let one = write_temp(&dir, "one.json", r#"[{"id": "X", "type": "triangle", "params": [1, 2, 3]}]"#);
    let run = wabl(&["rank", &one, "--c", "0.3", "--k", "1", "--t", "3"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("\n1     X   "), "{}", run.stdout);

    let twins = write_temp(
        &dir,
        "twins.json",
        r#"[{"id": "X", "type": "triangle", "params": [1, 2, 3]},
            {"id": "Y", "type": "triangle", "params": [1, 2, 3]}]"#,
    );
    let run = wabl(&["rank", &twins, "--c", "0.3", "--k", "1", "--t", "3", "--format", "machine"]);
    let ranking = json(&run)["ranking"].clone();
    assert_eq!(ranking[0]["id"], "X");
    assert_eq!(ranking[0]["rank"], 1);
    assert_eq!(ranking[1]["id"], "Y");
    assert_eq!(ranking[1]["rank"], 1);
}

#[test]
fn verify_reports_erratum() {
    let run = wabl(&["verify", &fixture("trapezoid_example.json"), "--c", "0.8", "--k", "1", "--t", "4"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("prints 19.9"), "{}", run.stdout);
    assert!(run.stdout.contains("erratum"));

    let run = wabl(&[
        "verify",
        &fixture("trapezoid_example.json"),
        "--c",
        "0.8",
        "--k",
        "1",
        "--t",
        "4",
        "--format",
        "machine",
    ]);
    let rec = json(&run)["records"][0].clone();
    assert!((rec["pattern_value"].as_f64().unwrap() - 16.2).abs() <= 1e-12);
    let published = &rec["published"][0];
    assert_eq!(published["printed"].as_f64(), Some(19.9));
    assert_eq!(published["consistent"], false);
    assert!((published["closed"].as_f64().unwrap() - 16.2).abs() <= 1e-12);
    assert!((published["summation"].as_f64().unwrap() - 16.2).abs() <= 1e-12);
    assert!(rec["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
}

#[test]
fn verify_constant_pattern_and_crisp() {
    let run = wabl(&[
        "verify",
        &fixture("trapezoid_example.json"),
        "--c",
        "0.8",
        "--k",
        "0",
        "--t",
        "4",
        "--format",
        "machine",
    ]);
    let rec = json(&run)["records"][0].clone();
    assert_eq!(rec["published"][0]["consistent"], true);
    for check in rec["checks"].as_array().unwrap() {
        assert!(check["rel_dev"].as_f64().unwrap() <= 1e-15, "{check}");
    }

    let dir = tempfile::tempdir().unwrap();
    let doc = write_temp(&dir, "crisp.json", r#"[{"id": "K", "type": "trapezoid", "params": [5, 5, 5, 5]}]"#);
    for k in ["0", "1", "2", "5"] {
        let run = wabl(&["verify", &doc, "--c", "0.37", "--k", k, "--t", "9", "--format", "machine"]);
        assert_eq!(run.code, 0);
        let rec = json(&run)["records"][0].clone();
        assert_eq!(rec["pattern_value"].as_f64(), Some(5.0));
        assert!((rec["continuous_value"].as_f64().unwrap() - 5.0).abs() <= 1e-12);
    }
}

#[test]
fn verify_rejects_discrete_records_and_explicit_weights() {
    let run = wabl(&[
        "verify",
        &fixture("discrete_example.json"),
        "--c",
        "0.2",
        "--k",
        "1",
        "--t",
        "4",
    ]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("trapezoid and triangle records only"));

    let run = wabl(&[
        "verify",
        &fixture("trapezoid_example.json"),
        "--c",
        "0.2",
        "--weights",
        &fixture("discrete_example_weights.json"),
    ]);
    assert_eq!(run.code, 1);
}

#[test]
fn weights_tables() {
    let run = wabl(&["weights", "--k", "1", "--t", "4", "--format", "machine"]);
    assert_eq!(run.code, 0);
    let v = json(&run);
    assert_eq!(v["Q"].as_f64(), Some(10.0));
    let p: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r["p"].as_f64().unwrap()).collect();
    assert_eq!(p, vec![0.0, 0.1, 0.2, 0.3, 0.4]);

    let run = wabl(&["weights", "--k", "0", "--t", "4"]);
    assert!(run.stdout.starts_with("# t = 4, k = 0, Q = 5\n"), "{}", run.stdout);
    assert_eq!(run.stdout.matches("0.2\n").count(), 5);

    let run = wabl(&["weights", "--k", "2", "--t", "4", "--format", "machine"]);
    let v = json(&run);
    assert_eq!(v["Q"].as_f64(), Some(30.0));
    let p: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r["p"].as_f64().unwrap()).collect();
    assert_eq!(p, vec![0.0, 1.0 / 30.0, 4.0 / 30.0, 9.0 / 30.0, 16.0 / 30.0]);

    let run = wabl(&["weights", "--k", "1", "--t", "0"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("at least 1"));
}

#[test]
fn config_errors() {
    let doc = fixture("trapezoid_example.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["compute", &doc, "--c", "0.5"],
        vec!["compute", &doc, "--c", "0.5", "--k", "1"],
        vec!["compute", &doc, "--c", "1.5", "--k", "1", "--t", "2"],
        vec!["compute", &doc, "--c", "-0.1", "--k", "1", "--t", "2"],
        vec!["compute", &doc, "--k", "1", "--t", "2"],
        vec![
            "compute",
            &doc,
            "--c",
            "0.5",
            "--k",
            "1",
            "--t",
            "2",
            "--weights",
            "w.json",
        ],
        vec!["compute", "/nonexistent/input.json", "--c", "0.5", "--k", "1", "--t", "2"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let run = wabl(&args);
        assert_eq!(run.code, 1, "{args:?}: {}", run.stderr);
        assert!(!run.stderr.is_empty());
        assert!(run.stdout.is_empty());
    }
    assert_eq!(wabl(&["--help"]).code, 0);
}

#[test]
fn syntax_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_temp(&dir, "bad.json", "[\n  {\"id\": \"A\",,}\n]");
    let run = wabl(&["compute", &doc, "--c", "0.5", "--k", "1", "--t", "2"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("bad.json:2:"), "{}", run.stderr);
}

#[test]
fn partial_failures_report_every_record() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_temp(
        &dir,
        "mixed.json",
        r#"[{"id": "good", "type": "trapezoid", "params": [1, 2, 3, 4]},
            {"id": "bad1", "type": "trapezoid", "params": [4, 3, 2, 1]},
            {"id": "good2", "type": "triangle", "params": [0, 1, 2]},
            {"id": "bad2", "type": "triangle", "params": [0, 1]}]"#,
    );
    let run = wabl(&["compute", &doc, "--c", "0.5", "--k", "1", "--t", "2", "--format", "machine"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("bad1"));
    assert!(run.stderr.contains("bad2"));
    let v = json(&run);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 4);
    assert!(records[0]["result"].is_object());
    assert_eq!(records[1]["error"]["kind"], "input");
    assert!(records[2]["result"].is_object());
    assert_eq!(records[3]["error"]["kind"], "input");
}

#[test]
fn empty_cut_is_a_computation_error() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_temp(
        &dir,
        "d.json",
        r#"[{"id": "D", "type": "discrete", "points": [[0, 0.5], [1, 1.0]]},
            {"id": "E", "type": "discrete", "points": [[0, 1.0]]}]"#,
    );
    // Level 0 carries mass, and a discrete number has no cut there.
    let weights = write_temp(&dir, "w.json", "[[0.0, 0.5], [1.0, 0.5]]");
    let run = wabl(&["compute", &doc, "--c", "0.5", "--weights", &weights]);
    assert_eq!(run.code, 2, "{}", run.stderr);
    assert!(run.stderr.contains("`D`"));
    assert!(run.stderr.contains("`E`"));
}

#[test]
fn foreign_levels_are_flagged_in_verbose_output() {
    let dir = tempfile::tempdir().unwrap();
    let weights = write_temp(&dir, "w.json", "[[0.3, 0.5], [1.0, 0.5]]");
    let run = wabl(&[
        "compute",
        &fixture("discrete_example.json"),
        "--c",
        "0.5",
        "--weights",
        &weights,
        "--verbose",
    ]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("0.3 *"), "{}", run.stdout);
    assert!(run.stdout.contains("not membership degrees"));
}

#[test]
fn text_and_machine_agree() {
    let base = [
        "compute",
        &fixture("alternatives.json"),
        "--c",
        "0.65",
        "--k",
        "2",
        "--t",
        "7",
    ];
    let text = wabl(&base);
    let mut args = base.to_vec();
    args.extend(["--format", "machine"]);
    let machine = json(&wabl(&args));
    for rec in machine["records"].as_array().unwrap() {
        let value = rec["result"]["value"].as_f64().unwrap();
        let printed = wabl_cli::render::num(value);
        let id = rec["id"].as_str().unwrap();
        let line = text
            .stdout
            .lines()
            .find(|l| l.starts_with(&format!("{id} ")))
            .unwrap();
        assert!(line.contains(&printed), "{line} vs {printed}");
    }
}
