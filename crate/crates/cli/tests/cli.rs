use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn findim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_findim")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn pd_of_a_simple_over_a2() {
    let o = findim(&["pd", &fixture("a2.qa"), "--module", "simple:1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("pd simple:1 = Finite(1)\n"));
    let v = json(&findim(&["pd", &fixture("a2.qa"), "--module", "simple:1", "--json"]));
    assert_eq!(v["pd"], serde_json::json!({"kind": "finite", "pd": 1}));
}

#[test]
fn basis_reports_graded_dimensions() {
    let v = json(&findim(&["basis", &fixture("a2.qa"), "--json"]));
    assert_eq!(v["dim"], 3);
    assert_eq!(v["nilpotency_index"], 2);
    assert_eq!(v["dims_by_degree"], serde_json::json!([2, 1]));
    assert_eq!(v["field"], 101);
}

#[test]
fn syzygy_and_decompose() {
    let v = json(&findim(&["syzygy", &fixture("a2.qa"), "--module", "simple:1", "--steps", "3", "--json"]));
    let steps = v["syzygies"].as_array().unwrap();
    // Ω S_1 = P_2 and Ω² S_1 = 0 stop the sequence early.
    assert_eq!(steps.len(), 3);
    assert_eq!(steps[1]["summands"][0]["projective"], "2");
    let v = json(&findim(&["decompose", &fixture("ex41.qa"), "--module", "ideal_as_module:I2", "--json"]));
    let total: u64 = v["summands"].as_array().unwrap().iter().map(|s| s["multiplicity"].as_u64().unwrap()).sum();
    assert!(total >= 1);
}

#[test]
fn orbit_and_psi() {
    let v = json(&findim(&["orbit", &fixture("ex43.qa"), "--modules", "simple:1,simple:2", "--json"]));
    assert_eq!(v["orbit"]["status"]["kind"], "closed");
    let v = json(&findim(&["psi", &fixture("a2.qa"), "--module", "simple:1", "--json"]));
    assert_eq!(v["psi"]["psi"], 1);
}

#[test]
fn example_verdicts_and_strict_exit_codes() {
    let o = findim(&["example", "4.1", "--json", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v[0]["conclusion"], "SyzygyFinite");
    assert_eq!(v[0]["theorem"], "ideal_chain");
    assert!(v[0].get("timestamp").is_none());

    let v = json(&findim(&["example", "4.5", "--n", "2", "--json"]));
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v.as_array().unwrap().iter().all(|x| x["conclusion"] == "IgusaTodorov"));

    assert_eq!(findim(&["example", "4.5"]).status.code(), Some(0));
    assert_eq!(findim(&["example", "4.5", "--strict"]).status.code(), Some(2));
    assert_eq!(findim(&["example", "4.4"]).status.code(), Some(1));
}

#[test]
fn check_subcommands() {
    let o = findim(&["check", "chain", &fixture("ex41.qa"), "--ideals", "I1,I2", "--json"]);
    assert_eq!(json(&o)[0]["conclusion"], "SyzygyFinite");
    let o = findim(&["check", "ij", &fixture("ex43.qa"), "--I", "I", "--J", "I", "--json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)[0]["theorem"], "ideal_square");
    let o = findim(&["check", "ij", &fixture("ex41.qa"), "--I", "I1", "--J", "I2", "--json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)[0]["theorem"], "ideal_pair");
    let o = findim(&["check", "radical", &fixture("a2.qa"), "--json"]);
    assert!(json(&o).as_array().unwrap().len() >= 3);
}

#[test]
fn hints_reach_the_verdict() {
    let o = findim(&[
        "check", "ij", &fixture("ex43.qa"), "--I", "I", "--J", "I", "--assert-rep-finite", "I", "--json",
    ]);
    let v = json(&o);
    assert_eq!(v[0]["request"]["hints"]["rep_finite"], serde_json::json!(["I"]));
}

#[test]
fn replay_agrees_and_detects_tampering() {
    let report = scratch("report.json");
    let o = findim(&["example", "4.3", "--json"]);
    std::fs::write(&report, &o.stdout).unwrap();
    let r = findim(&["--replay", report.to_str().unwrap(), "--json"]);
    assert!(r.status.success());
    assert_eq!(json(&r)["mismatches"], serde_json::json!([]));

    let mut v = json(&o);
    let flipped = !v[0]["checks"][0]["holds"].as_bool().unwrap();
    v[0]["checks"][0]["holds"] = Value::Bool(flipped);
    let bad = scratch("tampered.json");
    std::fs::write(&bad, serde_json::to_vec(&v).unwrap()).unwrap();
    let r = findim(&["--replay", bad.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(1));
    assert!(stdout(&r).contains("MISMATCH"));
}

#[test]
fn errors_exit_with_one() {
    let o = findim(&["pd", &fixture("a2.qa"), "--module", "simple:9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(findim(&["pd", "/nonexistent.qa", "--module", "simple:1"]).status.code(), Some(1));
    assert_eq!(findim(&["pd"]).status.code(), Some(1));
    assert_eq!(findim(&["example", "9.9"]).status.code(), Some(1));
    assert_eq!(findim(&["--help"]).status.code(), Some(0));
}
