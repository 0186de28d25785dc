use std::fs;
use std::process::{Command, Output};

fn cellres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellres")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn resolve_blow_up() {
    let out = cellres(&["resolve", "--input", "builtin:blowup"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ranks"], serde_json::json!([1, 3, 2]));
}

#[test]
fn classify_twice_blown_up() {
    let out = cellres(&["classify", "--input", "builtin:twice"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["smooth"], true);
    assert_eq!(doc["unimodular"], false);
}

#[test]
fn non_primitive_ray_is_a_fan_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fan.json");
    fs::write(&path, r#"{"m":2,"rays":[[2,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#).unwrap();
    let out = cellres(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not primitive"));
}

#[test]
fn schema_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fan.json");
    fs::write(&path, r#"{"m":2,"rays":[[1,0]],"cones":[]}"#).unwrap();
    assert_eq!(cellres(&["resolve", "--input", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(cellres(&["resolve", "--input", "builtin:blowup", "--epsilon", "1/10,0"]).status.code(), Some(2));
    assert_eq!(cellres(&["resolve", "--input", "builtin:blowup", "--epsilon", "a,b,c,d"]).status.code(), Some(2));
    assert_eq!(cellres(&["resolve", "--input", "builtin:nothing"]).status.code(), Some(2));
    assert_eq!(cellres(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in ["resolve", "verify", "svg", "cas-script"] {
        let paths: Vec<_> = (0..2).map(|k| dir.path().join(format!("{cmd}{k}"))).collect();
        for p in &paths {
            let out = cellres(&[cmd, "--input", "builtin:p2", "--seed", "5", "--out", p.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        }
        assert_eq!(fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap(), "{cmd}");
    }
}

#[test]
fn verify_reports_failures_with_exit_four() {
    let out = cellres(&["verify", "--input", "builtin:twice"]);
    assert_eq!(out.status.code(), Some(4));
    let doc = json(&out);
    assert_eq!(doc["passed"], false);
    let tolerant = cellres(&["verify", "--input", "builtin:twice", "--allow-irrelevant-torsion"]);
    assert_eq!(tolerant.status.code(), Some(0));
}

#[test]
fn user_basis_and_chamber() {
    let out = cellres(&["resolve", "--input", "builtin:blowup", "--basis", "0,1,0,0;0,0,1,0", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("(1,1) x (1,2)"));
    let out = cellres(&["verify", "--input", "builtin:chamber"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(cellres(&["verify", "--input", "builtin:blowup", "--removed-rays", "9"]).status.code(), Some(3));
}

#[test]
fn examples_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cellres(&["examples", "--out", dir.path().to_str().unwrap()]).status.code(), Some(0));
    for name in ["blowup", "deformed", "twice"] {
        let path = dir.path().join(format!("{name}.json"));
        let from_file = cellres(&["resolve", "--input", path.to_str().unwrap()]);
        let builtin = cellres(&["resolve", "--input", &format!("builtin:{name}")]);
        assert_eq!(from_file.stdout, builtin.stdout, "{name}");
    }
    let svg = cellres(&["svg", "--input", "builtin:twice"]);
    assert!(String::from_utf8_lossy(&svg.stdout).contains(r#"<metadata>{"vertices":2,"edges":6,"faces":4}</metadata>"#));
    let cas = cellres(&["cas-script", "--input", "builtin:p1"]);
    assert!(String::from_utf8_lossy(&cas.stdout).contains("S = QQ[x_1..x_2, y_1..y_2];"));
    assert_eq!(cellres(&["svg", "--input", "builtin:p1"]).status.code(), Some(1));
}
