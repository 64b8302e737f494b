use std::process::{Command, Output};

use serde_json::Value;

use tripotent_core::calculus::Tripotent;
use tripotent_core::kernel::{unit, ToleranceProfile};
use tripotent_core::models::{TripleElement, TripleModel};

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tripotent-logic"));
    cmd.args(args).env_remove("TRIPOTENT_LOGIC_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn verify_reports_pass_with_exit_zero() {
    let out = run(&["verify", "peirce", "--samples", "12", "--seed", "3"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["seed"], 3);
    assert_eq!(doc["target"], "peirce");
    assert!(doc["reports"].as_array().unwrap().iter().any(|r| r["check"] == "peirce-spectrum"));
}

#[test]
fn model_flag_restricts_the_suite() {
    let out = run(&["verify", "orthogonality", "--model", "spin3", "--samples", "10"], &[]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gallery_expected_failures_do_not_fail_the_run() {
    let out = run(&["gallery", "4ii"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let reports = doc["reports"].as_array().unwrap();
    assert!(reports.iter().any(|r| r["status"] == "expected-fail"));
    assert!(reports.iter().all(|r| r["status"] != "fail"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "nosuch"],
        vec!["gallery", "4v"],
        vec!["verify", "peirce", "--model", "m9x"],
        vec!["verify", "peirce", "--tol", "-1"],
        vec!["verify", "dye", "--map", "shear"],
        vec!["frobnicate"],
    ] {
        let out = run(&args, &[]);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn tolerance_comes_from_the_environment_unless_flagged() {
    let out = run(&["verify", "peirce", "--samples", "3"], &[("TRIPOTENT_LOGIC_TOL", "1e-10")]);
    assert_eq!(json(&out)["eps_zero"], 1e-10);
    let out = run(&["verify", "peirce", "--samples", "3", "--tol", "1e-11"], &[("TRIPOTENT_LOGIC_TOL", "1e-10")]);
    assert_eq!(json(&out)["eps_zero"], 1e-11);
    let out = run(&["verify", "peirce", "--samples", "3"], &[("TRIPOTENT_LOGIC_TOL", "tiny")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_output() {
    let a = run(&["verify", "meet", "--samples", "9", "--jobs", "1"], &[]);
    let b = run(&["verify", "meet", "--samples", "9", "--jobs", "3"], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format_lists_one_line_per_check() {
    let out = run(&["verify", "dye", "--format", "text"], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("pass") && l.contains("regular-gate")));
}

#[test]
fn hasse_prints_dot() {
    let out = run(&["hasse", "m2-projections"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("->"));
}

#[test]
fn hasse_reads_a_seed_file() {
    let tol = ToleranceProfile::default();
    let m3 = TripleModel::square(3).unwrap();
    let seed: Vec<Value> = [unit(3, 3, 0, 0), unit(3, 3, 1, 2)]
        .into_iter()
        .map(|e| Tripotent::new(TripleElement::from_matrix(m3, e).unwrap(), &tol).unwrap().to_json())
        .collect();
    let dir = std::env::temp_dir().join(format!("tripotent-logic-hasse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("seed.json");
    std::fs::write(&path, serde_json::json!({ "seed": seed }).to_string()).unwrap();
    let out = run(&["hasse", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("label=").count(), 4);
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["hasse", path.to_str().unwrap()], &[]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(run(&["hasse", path.to_str().unwrap()], &[]).status.code(), Some(2));
}
