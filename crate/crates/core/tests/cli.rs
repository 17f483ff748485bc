use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn crchern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crchern"))
        .args(args)
        .env_remove("CRCHERN_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scenario(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "scenarios", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_targets_pass() {
    for target in ["thm-1-1", "thm-1-2-formal", "prop-1-3", "prop-4-1", "prop-1-4", "tractor"] {
        let out = crchern(&["verify", target, "--n-max", "4"]);
        assert_eq!(code(&out), 0, "{target}: {}", stdout(&out));
    }
}

#[test]
fn verify_all_passes() {
    let out = crchern(&["verify", "all", "--n-max", "6", "--format", "json", "--no-timestamp"]);
    assert_eq!(code(&out), 0);
    let m = json(&out);
    assert_eq!(m["passed"], true);
    let ids: std::collections::BTreeSet<_> =
        m["reports"].as_array().unwrap().iter().map(|r| r["check"].as_str().unwrap().to_string()).collect();
    for id in [
        "nonzero-first-chern",
        "spherical-constraint",
        "integral-counterexample",
        "nonzero-second-chern",
        "stein-fillable-violation",
        "tractor-determinant",
        "bochner-flat",
        "bochner-control",
    ] {
        assert!(ids.contains(id), "{id} missing");
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "thm-9-9"][..],
        &["verify", "thm-1-1", "--bogus"],
        &["verify", "thm-1-1", "--m", "3"],
        &["verify", "thm-1-1", "--n", "3", "--n-max", "4"],
        &["verify", "thm-1-1", "--n", "0"],
        &["verify", "prop-1-3", "--n", "2", "--d", "0"],
        &["verify", "thm-1-1", "--format", "xml"],
        &["bochner", "1:+1", "1:zero"],
        &["eval", "cp:2", "2t"],
        &["eval", "nosuch:2", "t"],
        &["frobnicate"],
        &[],
    ] {
        let out = crchern(args);
        assert_eq!(code(&out), 2, "{args:?}");
    }
}

#[test]
fn json_is_reproducible_without_timestamp() {
    let args = ["verify", "all", "--n-max", "4", "--format", "json", "--no-timestamp", "--seed", "11"];
    let a = crchern(&args);
    let b = crchern(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let m = json(&a);
    assert!(m.get("timestamp").is_none());
    assert_eq!(m["seed"], 11);
    assert_eq!(m["command"][0], "verify");
}

#[test]
fn timestamp_present_by_default() {
    let out = crchern(&["verify", "tractor", "--n", "1", "--format", "json"]);
    let ts = json(&out)["timestamp"].as_str().unwrap().to_string();
    assert!(chrono::DateTime::parse_from_rfc3339(&ts).is_ok(), "{ts}");
    let md = stdout(&crchern(&["verify", "tractor", "--n", "1"]));
    assert!(md.contains("- timestamp: "));
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_crchern"));
        cmd.args(["bochner", "1:+1", "1:-1", "--samples", "2", "--format", "json", "--no-timestamp"]).args(extra);
        match env {
            Some(v) => cmd.env("CRCHERN_SEED", v),
            None => cmd.env_remove("CRCHERN_SEED"),
        };
        cmd.output().unwrap()
    };
    assert_eq!(json(&run(Some("42"), &[]))["seed"], 42);
    assert_eq!(json(&run(Some("42"), &["--seed", "5"]))["seed"], 5);
    assert_eq!(json(&run(None, &[]))["seed"], 0);
    assert_eq!(code(&run(Some("many"), &[])), 2);
    assert_eq!(json(&run(Some("42"), &[]))["reports"], json(&run(None, &["--seed", "42"]))["reports"]);
}

#[test]
fn eval_examples() {
    let first = stdout(&crchern(&["eval", "cp:2", "(t+1)^3"]));
    assert!(first.starts_with("1 + 3*t + 3*t^2\n"), "{first}");
    let nil = stdout(&crchern(&["eval", "surface:2", "(1+s)^3"]));
    assert!(nil.starts_with("1 + 3*s\n"), "{nil}");
    let modular = json(&crchern(&["eval", "cp:2@mod5", "-3*t^2", "--format", "json"]));
    assert_eq!(modular["element"], "2*t^2");
    assert_eq!(modular["ring"]["coefficients"]["mod"], 5);
    let inline = r#"{"coefficients":"Z","generators":[{"name":"a","degree":2,"truncation":2},{"name":"b","degree":4,"truncation":2}]}"#;
    let out = json(&crchern(&["eval", inline, "(a+b)^2", "--format", "json"]));
    assert_eq!(out["element"], "2*a*b");
}

#[test]
fn out_writes_file_and_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tractor.json");
    let p = path.to_str().unwrap();
    let out = crchern(&["verify", "tractor", "--n", "2", "--format", "json", "--out", p]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("1/1 checks passed"));
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m["reports"][0]["check"], "tractor-determinant");
}

#[test]
fn scenarios() {
    let flat = crchern(&["scenario", &scenario("flat.json"), "--format", "json", "--no-timestamp"]);
    assert_eq!(code(&flat), 0);
    assert_eq!(json(&flat)["seed"], 7);

    let control = crchern(&["scenario", &scenario("control.json"), "--format", "json", "--no-timestamp"]);
    assert_eq!(code(&control), 1);
    let report = &json(&control)["reports"][0];
    let s = report["residuals"].as_array().unwrap().iter().find(|r| r["label"] == "max |S|").unwrap();
    assert!(s["value"].as_f64().unwrap() > 1e-2);

    assert_eq!(code(&crchern(&["scenario", &scenario("control-expected.json")])), 0);
    assert_eq!(code(&crchern(&["scenario", &scenario("empty.json")])), 2);

    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("unknown.json", r#"{"factors":[{"dim":1,"hsc":"1"}],"colour":"red"}"#),
        ("zero.json", r#"{"factors":[{"dim":1,"hsc":"0"}]}"#),
        ("dim.json", r#"{"factors":[{"dim":0,"hsc":"1"}]}"#),
        ("broken.json", "{"),
    ] {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        assert_eq!(code(&crchern(&["scenario", path.to_str().unwrap()])), 2, "{name}");
    }
    assert_eq!(code(&crchern(&["scenario", "/nonexistent/scenario.json"])), 2);
}

#[test]
fn bochner_subcommand() {
    assert_eq!(code(&crchern(&["bochner", "1:1/2", "1:-1/2", "--samples", "3"])), 0);
    assert_eq!(code(&crchern(&["bochner", "1:+1", "1:+1", "--samples", "3"])), 1);
}
