use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_match-ybo"))
        .args(args)
        .env_remove("MATCH_YBO_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// One nation on four vertices: county {1} then {2,3} and {4}, the last
/// two on the other side.
const GERM_T4: &str = r#"{"n":4,"nations":[{"counties":[
    {"vertices":[1],"part":"first"},
    {"vertices":[2,3],"part":"second"},
    {"vertices":[4],"part":"second"}]}]}"#;

#[test]
fn enumerate_counts() {
    let out = run(&["enumerate", "--n", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["count"], 13);
    assert_eq!(v["configurations"].as_array().unwrap().len(), 13);

    let text = run(&["enumerate", "--n", "4", "--format", "text"]);
    assert!(String::from_utf8(text.stdout).unwrap().ends_with("46 diagrams\n"));
}

#[test]
fn build_verify_classify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let germ = dir.path().join("germ.json");
    fs::write(&germ, GERM_T4).unwrap();

    let built = run(&["build", "--germ", path(&germ), "--seed", "7"]);
    assert!(built.status.success());
    assert!(built.stdout.is_ascii());
    let matrix = dir.path().join("m.json");
    fs::write(&matrix, &built.stdout).unwrap();

    for method in ["direct", "constraints", "subsets", "all"] {
        let out = run(&["verify", "--matrix", path(&matrix), "--method", method]);
        assert_eq!(out.status.code(), Some(0), "{method}");
        let v = json(&out);
        assert_eq!(v["solution"], true);
        assert_eq!(v["method"], method);
        assert!(v["witnesses"].as_array().unwrap().is_empty());
    }

    let classified = run(&["classify", "--matrix", path(&matrix)]);
    assert!(classified.status.success());
    let germ2 = dir.path().join("germ2.json");
    fs::write(&germ2, &classified.stdout).unwrap();
    let rebuilt = run(&["build", "--germ", path(&germ2)]);
    assert_eq!(rebuilt.stdout, built.stdout);
    let matrix2 = dir.path().join("m2.json");
    fs::write(&matrix2, &rebuilt.stdout).unwrap();
    assert_eq!(run(&["classify", "--matrix", path(&matrix2)]).stdout, classified.stdout);
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let germ = dir.path().join("germ.json");
    fs::write(&germ, GERM_T4).unwrap();
    let with_env = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_match-ybo"))
            .args(["build", "--germ", path(&germ)])
            .env("MATCH_YBO_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(with_env("5"), run(&["build", "--germ", path(&germ), "--seed", "5"]).stdout);
    assert_ne!(with_env("5"), with_env("6"));
}

#[test]
fn corrupted_matrix_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let germ = dir.path().join("germ.json");
    fs::write(&germ, GERM_T4).unwrap();
    let built = run(&["build", "--germ", path(&germ)]);
    let mut m: Value = serde_json::from_slice(&built.stdout).unwrap();
    m["edges"][0]["c"] = Value::String("2".into());
    let bad = dir.path().join("bad.json");
    fs::write(&bad, m.to_string()).unwrap();

    let out = run(&["classify", "--matrix", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["witnesses"].as_array().unwrap().is_empty());

    let out = run(&["verify", "--matrix", path(&bad), "--method", "all"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["solution"], false);
    assert_eq!(v["agree"], true);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{\"n\": 2, \"vertices\": [\"1\"]").unwrap();
    assert_eq!(run(&["verify", "--matrix", path(&junk)]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--matrix", path(&junk)]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["build", "--germ", path(&missing)]).status.code(), Some(2));
    let overlap = dir.path().join("overlap.json");
    fs::write(&overlap, r#"{"n":2,"nations":[{"counties":[{"vertices":[1,1],"part":"first"}]}]}"#).unwrap();
    assert_eq!(run(&["orbit", "--config", path(&overlap)]).status.code(), Some(2));
    assert_eq!(run(&["fibre", "--type", "///", "--prime", "9"]).status.code(), Some(2));
    assert_eq!(run(&["fibre", "--type", "x"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate"]).status.code(), Some(2));
}

#[test]
fn fibre_report() {
    let out = run(&["fibre", "--type", "0,+,+", "--prime", "7"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["prime"], 7);
    assert!(v["solutions"].as_u64().unwrap() > 0);
    assert_eq!(v["matches_family"], true);

    let v = json(&run(&["fibre", "--type", "/,+,+", "--prime", "7"]));
    assert_eq!(v["solutions"], 0);
}

#[test]
fn signature_and_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    fs::write(&config, GERM_T4).unwrap();
    let v = json(&run(&["signature", "--config", path(&config)]));
    assert_eq!(v["notation"], "(10,6)");
    let v = json(&run(&["signature", "--germ", path(&config)]));
    assert_eq!(v["agrees"], true);

    let plain = json(&run(&["orbit", "--config", path(&config)]));
    let flipped = json(&run(&["orbit", "--config", path(&config), "--flip"]));
    assert!(plain["size"].as_u64().unwrap() >= 1);
    assert!(flipped["size"].as_u64() >= plain["size"].as_u64());
}

#[test]
fn selftest_quick() {
    let out = run(&["--jobs", "2", "selftest", "--level", "quick"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 10);
    let log = String::from_utf8(out.stderr).unwrap();
    assert_eq!(log.lines().filter(|l| l.starts_with("[PASS]")).count(), 10);
}
