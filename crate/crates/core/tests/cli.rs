//! End-to-end runs of the `galois-lab` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(name)
}

fn galois_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galois-lab"))
        .args(args)
        .env_remove("GALOIS_LAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("galois-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn z2_passes_every_suite() {
    let out = galois_lab(&["check", instance("z2.toml").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["monoid"], "Z2");
    let suites = report["suites"].as_object().unwrap();
    assert_eq!(suites.len(), 8);
    assert!(suites.values().all(|s| s["outcome"] == "pass"));
}

#[test]
fn idem2_fails_exactly_the_group_dependent_suites() {
    let out = galois_lab(&["check", instance("idem2.toml").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let failing: Vec<&str> = report["suites"]
        .as_object()
        .unwrap()
        .iter()
        .filter(|(_, s)| s["outcome"] == "fail")
        .map(|(name, _)| name.as_str())
        .collect();
    assert_eq!(failing, ["antipode", "galois-entwining", "galois-grouplike", "galois-object", "hopf-equivalence"]);
    let witness = &report["suites"]["antipode"]["witness"];
    assert!(witness["law"].as_str().is_some());
}

#[test]
fn suite_selection_and_ordering() {
    let path = instance("z2.toml");
    let out =
        galois_lab(&["check", path.to_str().unwrap(), "--suite", "laws", "--suite", "antipode", "--format", "json"]);
    let names: Vec<String> = json(&out)["suites"].as_object().unwrap().keys().cloned().collect();
    assert_eq!(names, ["antipode", "laws"]);
}

#[test]
fn empty_suite_list_runs_nothing_and_passes() {
    let path = scratch("empty.toml", "name = \"empty\"\nmonoid = \"builtin:Z2\"\nsuites = []\n");
    let out = galois_lab(&["check", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["suites"].as_object().unwrap().is_empty());
}

#[test]
fn malformed_instances_exit_with_two() {
    let cases = [
        ("syntax.toml", "name = \n"),
        ("unknown.toml", "name = \"x\"\nmonoid = \"builtin:Nope\"\n"),
        ("law.toml", "name = \"x\"\nmonoid = [[0, 1], [1, 1], [0, 0]]\n"),
    ];
    for (file, contents) in cases {
        let out = galois_lab(&["check", scratch(file, contents).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{file}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(galois_lab(&["check", "/nonexistent/instance.toml"]).status.code(), Some(2));
    assert_eq!(galois_lab(&["check", instance("z2.toml").to_str().unwrap(), "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn reports_do_not_depend_on_parallelism() {
    let path = instance("v4-cosets.toml");
    let serial = galois_lab(&["check", path.to_str().unwrap(), "--format", "json", "--jobs", "1"]);
    let parallel = galois_lab(&["check", path.to_str().unwrap(), "--format", "json", "--jobs", "4"]);
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(serial.status.code(), parallel.status.code());
}

#[test]
fn budget_flag_fills_unpinned_budgets() {
    let open = scratch("open.toml", "name = \"open\"\nmonoid = \"builtin:Z2\"\nsuites = [\"laws\"]\n");
    let out = galois_lab(&["check", open.to_str().unwrap(), "--budget", "3", "--format", "json"]);
    let report = json(&out);
    assert_eq!(report["budgets"], serde_json::json!({ "base": 3, "em": 6, "comma": 6 }));
    assert_eq!(report["digest"].as_str().unwrap().len(), 64);

    // z2.toml pins its base budget, which wins over the flag.
    let pinned = galois_lab(&[
        "check",
        instance("z2.toml").to_str().unwrap(),
        "--suite",
        "laws",
        "--budget",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(json(&pinned)["budgets"]["base"], 2);
}

#[test]
fn corpus_list_names_every_action() {
    let out = galois_lab(&["corpus", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["Z1.regular", "Z2.regular", "Idem2.regular", "Z3.regular", "V4.cosets2"] {
        assert!(text.contains(name), "{name} missing from corpus list");
    }
}

#[test]
fn human_output_has_one_line_per_suite() {
    let out = galois_lab(&[
        "check",
        instance("z3-trivial.toml").to_str().unwrap(),
        "--suite",
        "laws",
        "--suite",
        "injectives",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.trim_start().starts_with("laws")));
    assert!(text.lines().any(|l| l.trim_start().starts_with("injectives")));
}
