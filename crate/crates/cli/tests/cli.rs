use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

const QUARTIC: &str =
    r#"{"type":"kummer","p":5,"n":2,"branch":[{"rho":1,"l":1},{"rho":2,"l":1},{"rho":3,"l":1},{"rho":4,"l":1}]}"#;
const AS_F3: &str = r#"{"type":"artin-schreier","p":3,"f":[1,0,1],"branch":[{"rho":1,"l":1},{"rho":2,"l":1}]}"#;
const AS_F7: &str = r#"{"type":"artin-schreier","p":7,"f":[1,0,1],"branch":[{"rho":3,"l":2}]}"#;

fn spec_file(text: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-covers")).args(args).output().unwrap()
}

fn run_on(text: &str, args: &[&str]) -> Output {
    let file = spec_file(text);
    let path = file.path().to_str().unwrap().to_string();
    let mut all: Vec<&str> = vec![args[0], &path];
    all.extend(&args[1..]);
    run(&all)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn failing(doc: &Value) -> Vec<String> {
    doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn info_reports_genus_and_mu_table() {
    let out = run_on(QUARTIC, &["info", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["curve"]["genus"], 1);
    assert_eq!(doc["curve"]["mu_table"][0]["t"], 2);
    assert!(doc.get("checks").is_none());

    let doc = json(&run_on(AS_F7, &["info", "--json"]));
    let row = doc["curve"]["mu_table"].as_array().unwrap().iter().find(|r| r["mu"] == 1).unwrap();
    assert_eq!(row["m"], serde_json::json!([2]));

    let text = stdout(&run_on(QUARTIC, &["info"]));
    assert!(text.contains("genus   1"));
}

#[test]
fn basis_rendering() {
    let out = run_on(QUARTIC, &["basis", "omega"]);
    assert_eq!(stdout(&out), "omega[1,1] = (1/(4 + x^4))*y * dx\n");

    let text = stdout(&run_on(QUARTIC, &["basis", "derham"]));
    assert!(text.contains("a[1,1]") && text.contains("delta[1,1]"));

    let count = |args: &[&str]| json(&run_on(AS_F3, args))["bases"]["h1"].as_array().unwrap().len();
    assert_eq!(count(&["basis", "h1", "--json", "--mu-range", "paper"]), 1);
    assert_eq!(count(&["basis", "h1", "--json", "--mu-range", "extended"]), 2);
}

#[test]
fn verify_exit_codes() {
    let out = run_on(QUARTIC, &["verify", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["all_pass"], true);
    assert_eq!(doc["pairing_matrix"], serde_json::json!([[1]]));
    assert_eq!(doc["policy"]["sign_convention"], "negated-infty");

    let out = run_on(AS_F3, &["verify", "--json", "--mu-range", "paper"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(failing(&json(&out)), ["dimension"]);

    let out = run_on(QUARTIC, &["verify", "--json", "--sign", "paper"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(failing(&json(&out)), ["cocycle:a[1,1]"]);

    let out = run_on(QUARTIC, &["verify"]);
    assert!(stdout(&out).lines().any(|l| l.starts_with("duality") && l.contains("pass")));
}

#[test]
fn input_errors_exit_2() {
    for text in [
        "{",
        r#"{"type":"kummer","p":5,"n":2,"branch":[],"extra":1}"#,
        r#"{"type":"kummer","p":5,"n":3,"branch":[{"rho":1,"l":3}]}"#,
    ] {
        let out = run_on(text, &["verify"]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(&["info", "/nonexistent/curve.json"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--p-max", "1000"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    for text in [QUARTIC, AS_F3] {
        let a = run_on(text, &["verify", "--json"]);
        let b = run_on(text, &["verify", "--json"]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn sweep_failures_round_trip() {
    let args = ["sweep", "--family", "artin-schreier", "--mu-range", "paper", "--count-cap", "12", "--json"];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(1));
    let summary = json(&out);
    let failures = summary["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    for f in failures {
        assert_eq!(f["failing"], serde_json::json!(["dimension"]));
        let again = run_on(&f["spec"].to_string(), &["verify", "--json", "--mu-range", "paper"]);
        assert_eq!(again.status.code(), Some(1));
        assert_eq!(failing(&json(&again)), ["dimension"]);
    }

    let mut threaded = args.to_vec();
    threaded.extend(["--jobs", "3"]);
    assert_eq!(run(&threaded).stdout, out.stdout);
}

#[test]
fn default_sweeps_pass() {
    let out = run(&["sweep", "--family", "artin-schreier", "--json", "--jobs", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["curves"].as_u64().unwrap() >= 30);
    let out = run(&["sweep", "--family", "kummer", "--count-cap", "200", "--json", "--jobs", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], 200);
}
