use std::process::{Command, Output};

fn reinhardt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reinhardt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_spec(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn validate_shipped_spec() {
    let spec = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/specs/bidisc.json");
    let o = reinhardt(&["validate", "--domain", spec]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("OK bidisc"));
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let sign = write_spec(
        &dir,
        "sign.json",
        r#"{"name":"s","dim":1,"constraints":[{"terms":[{"alpha":[-1.0],"b":0.0}]}],"axis_included":[true],"witness_log":[1.0]}"#,
    );
    assert_eq!(reinhardt(&["validate", "--domain", &sign]).status.code(), Some(3));
    let witness = write_spec(
        &dir,
        "witness.json",
        r#"{"name":"w","dim":1,"constraints":[{"terms":[{"alpha":[1.0],"b":0.0}]}],"axis_included":[true],"witness_log":[0.5]}"#,
    );
    assert_eq!(reinhardt(&["validate", "--domain", &witness]).status.code(), Some(3));
    let schema = write_spec(&dir, "schema.json", r#"{"name":"x","dim":2,"constraints":[],"axis_included":[true]}"#);
    assert_eq!(reinhardt(&["validate", "--domain", &schema]).status.code(), Some(2));
}

#[test]
fn dist_on_unit_disc() {
    let o = reinhardt(&["dist", "--domain", "unit-disc", "--point", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let d: f64 = out.lines().find_map(|l| l.strip_prefix("d = ")).unwrap().parse().unwrap();
    assert!((d - 0.7).abs() < 1e-12);
}

#[test]
fn monomial_bound_on_product_domain() {
    let o = reinhardt(&[
        "bound", "--domain", "product-one", "--base", "0.5,0.5", "--target", "0.9,0.9", "--constructions", "mono",
        "--monomial", "1,1", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let value = v[0]["result"]["value"].as_f64().unwrap();
    // mpmath: atanh((0.81 - 0.25) / (1 - 0.25 * 0.81))
    assert!((value - 0.87161621416669730).abs() < 1e-12);
}

#[test]
fn precondition_exit_code() {
    let o = reinhardt(&["bound", "--domain", "bidisc", "--base", "0.5,0.5", "--target", "1.5,0.5", "--constructions", "int"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn profile_json() {
    let o = reinhardt(&["profile", "--domain", "disc-times-punctured-disc", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["fu_satisfied"], serde_json::Value::Bool(false));
    assert_eq!(v["complete_dirs"], serde_json::json!([0]));
}

#[test]
fn sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let args = [
        "sweep", "--domain", "product-one", "--zeta0", "1,1", "--kind", "normal", "--base", "0.5,0.5", "--count", "9",
        "--constructions", "U_int,L_mono",
    ];
    let first = reinhardt(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, reinhardt(&args).stdout);
    let mut with_out = args.to_vec();
    let out_s = out.to_string_lossy().into_owned();
    with_out.extend(["--out", &out_s]);
    assert_eq!(reinhardt(&with_out).status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), first.stdout);
    let text = stdout(&first);
    assert!(text.starts_with("t,d,logd,z_1,z_2,U_par,U_int,U_pp,L_mono,U_disc,flags"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn usage_errors() {
    assert_eq!(reinhardt(&["dist", "--domain", "bidisc", "--point", "0.5"]).status.code(), Some(1));
    assert_eq!(reinhardt(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(reinhardt(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn verify_subset() {
    let o = reinhardt(&["verify", "--suite", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("A1  PASS") && out.contains("A2  PASS"));
}
