use innervar::suite::{
    builtin, catalog, csv_bytes, parse_config, run_suite, validate, ExperimentRegistry, Row, SuiteError, CSV_HEADER,
};
use serde_json::json;

fn config(experiments: serde_json::Value) -> String {
    json!({
        "schema_version": 1,
        "name": "t",
        "description": "test",
        "experiments": experiments,
    })
    .to_string()
}

fn config_error(text: &str) -> String {
    let err = parse_config(text)
        .and_then(|cfg| validate(&cfg, &ExperimentRegistry::default()).map(|_| cfg))
        .unwrap_err();
    assert_eq!(err.exit_code(), 2, "{err}");
    match err {
        SuiteError::Config(msg) => msg,
        other => panic!("{other}"),
    }
}

#[test]
fn every_builtin_config_parses_and_validates() {
    let reg = ExperimentRegistry::default();
    assert!(catalog().len() >= 9);
    for e in catalog() {
        let cfg = builtin(e.name).unwrap();
        assert_eq!(cfg.name, e.name);
        assert!(cfg.result.is_some(), "{}", e.name);
        validate(&cfg, &reg).unwrap();
    }
    assert!(builtin("nope").is_none());
}

#[test]
fn registry_has_every_kind() {
    let kinds: Vec<&str> = ExperimentRegistry::default().kinds().map(|k| k.kind()).collect();
    assert_eq!(
        kinds,
        ["ac-converge", "equipartition", "forms", "gl-converge", "identities", "poincare", "profile", "tensors", "volume"]
    );
}

#[test]
fn malformed_configs_are_rejected() {
    let ok = json!([{ "name": "a", "kind": "profile", "params": { "ps": [2.0] } }]);
    parse_config(&config(ok.clone())).unwrap();

    let mut v: serde_json::Value = serde_json::from_str(&config(ok.clone())).unwrap();
    v["colour"] = json!("red");
    assert!(config_error(&v.to_string()).contains("colour"));
    v = serde_json::from_str(&config(ok.clone())).unwrap();
    v["schema_version"] = json!(2);
    assert!(config_error(&v.to_string()).contains("schema_version"));

    assert!(config_error(&config(json!([]))).contains("no experiments"));
    let dup = json!([
        { "name": "a", "kind": "profile", "params": { "ps": [2.0] } },
        { "name": "a", "kind": "profile", "params": { "ps": [3.0] } },
    ]);
    assert!(config_error(&config(dup)).contains("duplicate"));
    assert!(config_error(&config(json!([{ "name": "a/b", "kind": "profile" }]))).contains("a/b"));
    assert!(config_error(&config(json!([{ "name": "a", "kind": "magic" }]))).contains("unknown kind"));
    let extra = json!([{ "name": "a", "kind": "profile", "params": { "ps": [2.0], "pz": 1 } }]);
    assert!(config_error(&config(extra)).contains("pz"));
    let bad_p = json!([{ "name": "a", "kind": "profile", "params": { "ps": [0.5] } }]);
    config_error(&config(bad_p));
    assert!(config_error("{ not json").len() > 0);
}

fn flat() -> serde_json::Value {
    json!({ "type": "flat", "dim": 2, "half_width": 1.0, "normal_extent": 1.0, "resolution": 8 })
}

#[test]
fn impossible_requests_are_config_errors() {
    let sphere = json!({ "type": "sphere", "center": [0.0, 0.0, 0.0], "radius": 1.0, "resolution": 8 });
    // ε·S_max beyond half the focal distance
    let big = json!([{ "name": "a", "kind": "ac-converge", "params": {
        "geometry": sphere, "eta": { "type": "dilation", "a": 1.0 }, "zeta": { "type": "zero" },
        "ps": [2.0], "schedule": { "spacing": "halving", "eps0": 0.2, "count": 3 } } }]);
    assert!(config_error(&config(big)).contains("too large"), "EpsilonTooLarge should read as a config error");
    // a filament where a hypersurface is needed
    let fil = json!({ "type": "straight-filament", "length": 1.0, "tube_radius": 0.5, "resolution": 4 });
    let wrong = json!([{ "name": "a", "kind": "equipartition", "params": {
        "geometry": fil, "p": 2.0, "schedule": { "spacing": "halving", "eps0": 0.01, "count": 3 } } }]);
    assert!(config_error(&config(wrong)).contains("filament"));
    // the flat patch has a boundary
    let open = json!([{ "name": "a", "kind": "volume", "params": {
        "geometry": flat(), "cases": [{ "eta": { "type": "zero" }, "zeta": { "type": "zero" } }] } }]);
    config_error(&config(open));
    // ζ^η needs a velocity to refer to
    let eta_less = json!([{ "name": "a", "kind": "ac-converge", "params": {
        "geometry": flat(), "eta": { "type": "zeta-eta" }, "zeta": { "type": "zero" },
        "ps": [2.0], "schedule": { "spacing": "halving", "eps0": 0.05, "count": 3 } } }]);
    assert!(config_error(&config(eta_less)).contains("acceleration"));
    let model = json!([{ "name": "a", "kind": "equipartition", "params": {
        "geometry": flat(), "p": 2.0, "schedule": { "spacing": "halving", "eps0": 0.05, "count": 3, "model": "cubic" } } }]);
    config_error(&config(model));
}

#[test]
fn run_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = builtin("profile").unwrap();
    let summary = run_suite(&cfg, dir.path(), None).unwrap();
    assert!(summary.pass);
    assert_eq!(summary.exit_code(), 0);
    let csv = std::fs::read_to_string(dir.path().join("constants.csv")).unwrap();
    assert!(csv.starts_with(CSV_HEADER));
    assert_eq!(csv.lines().count(), 1 + 6);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["experiments"][0]["csv"], "constants.csv");
    assert_eq!(json["experiments"][0]["pass"], true);
    // no temporaries left behind
    let names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(names.iter().all(|n| !n.ends_with(".tmp")), "{names:?}");
}

#[test]
fn csv_bytes_depend_only_on_config_and_seed() {
    let text = config(json!([{ "name": "ids", "kind": "identities", "params": {
        "cases": 3, "points_per_axis": 12, "identity_points": 50, "filament_fields": 1 } }]));
    let cfg = parse_config(&text).unwrap();
    let run = |seed| {
        let dir = tempfile::tempdir().unwrap();
        let s = run_suite(&cfg, dir.path(), Some(seed)).unwrap();
        assert_eq!(s.seed, seed);
        std::fs::read(dir.path().join("ids.csv")).unwrap()
    };
    let a = run(5);
    assert_eq!(a, run(5));
    assert_ne!(a, run(6));
    // a narrower pool gives the same bytes
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    assert_eq!(a, pool.install(|| run(5)));
}

#[test]
fn csv_format_is_fixed() {
    let rows = vec![
        Row {
            series: "a,b".into(),
            epsilon: Some(0.5),
            value: 1.0,
            target: -2.0,
            gap: 0.0,
            residual_1: f64::NAN,
            residual_2: 0.25,
        },
        Row {
            series: "plain".into(),
            epsilon: None,
            value: 0.1,
            target: 0.0,
            gap: 0.0,
            residual_1: 0.0,
            residual_2: 0.0,
        },
    ];
    let csv = csv_bytes(&rows);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[1],
        "\"a,b\",5.00000000000000000e-1,1.00000000000000000e0,-2.00000000000000000e0,0.00000000000000000e0,NaN,2.50000000000000000e-1"
    );
    assert!(lines[2].starts_with("plain,,1.00000000000000006e-1,"));
}

#[test]
fn numerical_failures_exit_with_one() {
    let err = SuiteError::Numerical {
        experiment: "x".into(),
        source: innervar::Error::Numerical("diverged".into()),
    };
    assert_eq!(err.exit_code(), 1);
    assert!(err.to_string().contains("`x`"));
}
