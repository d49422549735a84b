use std::path::Path;
use std::process::{Command, Output};

use serde_json::json;

fn innervar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_innervar")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, v: &serde_json::Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn suite(experiments: serde_json::Value) -> serde_json::Value {
    json!({ "schema_version": 1, "name": "t", "description": "cli test", "experiments": experiments })
}

fn flat_ac(eps0: f64) -> serde_json::Value {
    let bump = json!({ "type": "box", "center": [0.0, 0.0], "half_widths": [0.8, 0.8], "power": 3 });
    let term = |c: f64, p: [u32; 2]| json!({ "coef": c, "powers": p });
    json!([{ "name": "flat-p2", "kind": "ac-converge", "params": {
        "geometry": { "type": "flat", "dim": 2, "half_width": 1.0, "normal_extent": 1.0, "resolution": 32 },
        "eta": { "type": "components", "components": [
            { "type": "polynomial", "terms": [term(0.5, [0, 0]), term(0.8, [1, 0])], "cutoff": bump },
            { "type": "polynomial", "terms": [term(-0.4, [1, 1])], "cutoff": bump } ] },
        "zeta": { "type": "zero" },
        "ps": [2.0],
        "schedule": { "spacing": "halving", "eps0": eps0, "count": 5 } } }])
}

#[test]
fn builtin_identities_suite_passes() {
    let out = tempfile::tempdir().unwrap();
    let o = innervar(&["run", "identities", "--out", out.path().to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("PASS random-cases"));
    assert!(out.path().join("random-cases.csv").exists());
    assert!(out.path().join("summary.json").exists());
}

#[test]
fn flat_ac_config_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "ac.json", &suite(flat_ac(0.1)));
    let out = dir.path().join("out");
    let o = innervar(&["run", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["pass"], true);
    assert!(summary["experiments"][0]["gap"].as_f64().unwrap() < 0.01);
}

#[test]
fn too_large_epsilon_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    // on the unit sphere the p = 2 layer must stay below half the focal distance
    let exps = json!([{ "name": "sphere", "kind": "ac-converge", "params": {
        "geometry": { "type": "sphere", "center": [0.0, 0.0, 0.0], "radius": 1.0, "resolution": 8 },
        "eta": { "type": "dilation", "a": 1.0 },
        "zeta": { "type": "zero" },
        "ps": [2.0],
        "schedule": { "spacing": "halving", "eps0": 0.1, "count": 4 } } }]);
    let cfg = write(dir.path(), "big.json", &suite(exps));
    let o = innervar(&["run", &cfg, "--out", dir.path().join("out").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("too large"));
    assert!(!dir.path().join("out").join("summary.json").exists());
}

#[test]
fn unknown_keys_and_files_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = suite(json!([{ "name": "c", "kind": "profile", "params": { "ps": [2.0] } }]));
    v["extra"] = json!(1);
    let cfg = write(dir.path(), "extra.json", &v);
    let o = innervar(&["run", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("extra"));
    let o = innervar(&["run", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_checks_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut exps = flat_ac(0.1);
    // demand an impossible rate
    exps[0]["params"]["min_rate"] = json!(5.0);
    let cfg = write(dir.path(), "strict.json", &suite(exps));
    let o = innervar(&["run", &cfg, "--out", dir.path().join("out").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL flat-p2"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`flat-p2` failed"));
}

#[test]
fn seed_and_jobs_do_not_change_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "ids.json",
        &suite(json!([{ "name": "ids", "kind": "identities", "params": {
            "cases": 2, "identity_points": 20, "filament_fields": 1 } }])),
    );
    let run = |tag: &str, jobs: &str| {
        let out = dir.path().join(tag);
        let o = innervar(&["run", &cfg, "--out", out.to_str().unwrap(), "--seed", "11", "--jobs", jobs]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(out.join("ids.csv")).unwrap()
    };
    assert_eq!(run("a", "1"), run("b", "4"));
}

#[test]
fn list_experiments_names_every_kind() {
    let o = innervar(&["list-experiments"]);
    assert!(o.status.success());
    let s = String::from_utf8(o.stdout).unwrap();
    for kind in ["identities", "ac-converge", "gl-converge", "tensors", "equipartition", "volume", "poincare", "forms", "profile"] {
        assert!(s.contains(kind), "{kind}");
    }
    assert!(s.contains("gl-filament"));
}
