use std::process::{Command, Output};

use serde_json::Value;

fn mosaic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mosaic")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_m2_parameters() {
    let out = mosaic(&["gen", "--family", "m2", "--t", "2", "--l", "1"]);
    assert!(out.status.success());
    let doc = json(&out);
    let h = &doc["result"]["header"];
    assert_eq!((h["v"].as_u64(), h["b"].as_u64(), h["a"].as_u64()), (Some(6), Some(15), Some(3)));
    assert_eq!(doc["input_hash"].as_str().map(str::len), Some(64));
    assert_eq!(doc["params"]["family"], "m2");
}

#[test]
fn input_hash_is_deterministic_and_parameter_sensitive() {
    let h = |q: &str| json(&mosaic(&["rates", "--family", "m1", "--t", "2", "--q", q]))["input_hash"].clone();
    assert_eq!(h("3"), h("3"));
    assert_ne!(h("3"), h("5"));
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m4");
    let p = path.to_str().unwrap();
    assert!(mosaic(&["gen", "--family", "m4", "--k", "3", "--q", "3", "--out", p]).status.success());
    let ok = mosaic(&["verify", "--input", p]);
    assert!(ok.status.success());
    assert_eq!(json(&ok)["result"]["ok"], true);

    // move one incidence of member 0 to a different point of the same block
    let csv = path.join("member_0.csv");
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut rows: Vec<Vec<String>> = text.lines().map(|l| l.split(',').map(String::from).collect()).collect();
    let x = rows.iter().position(|r| r[0] == "1").unwrap();
    let y = rows.iter().position(|r| r[0] == "0").unwrap();
    rows[x][0] = "0".into();
    rows[y][0] = "1".into();
    let tampered: String = rows.iter().map(|r| r.join(",") + "\n").collect();
    std::fs::write(&csv, tampered).unwrap();
    let bad = mosaic(&["verify", "--input", p]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["result"]["ok"], false);
    let err: Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert_eq!(err["error"], "property");
    assert!(err["witness"].is_object());
}

#[test]
fn validation_failures_exit_two() {
    let out = mosaic(&["gen", "--family", "m1", "--t", "2", "--q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "validation");
    assert_eq!(mosaic(&["rates", "--family", "m2", "--t", "2"]).status.code(), Some(2));
    assert_eq!(
        mosaic(&["bounds", "--family", "m1", "--t", "2", "--q", "2", "--channel", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn exact_prop41_on_affine_plane() {
    let out = mosaic(&[
        "exact",
        "--check",
        "prop41",
        "--family",
        "m1",
        "--t",
        "2",
        "--q",
        "3",
        "--channel",
        "random",
        "--trials",
        "100",
    ]);
    assert!(out.status.success());
    let r = &json(&out)["result"];
    assert!(r["max_discrepancy"].as_f64().unwrap() < 1e-9);
    assert_eq!(r["passed"], true);
}

#[test]
fn exact_prop42_and_sandwich() {
    let out = mosaic(&["exact", "--check", "prop42", "--family", "m4", "--k", "2", "--q", "3", "--trials", "100"]);
    assert!(out.status.success());
    let out = mosaic(&[
        "exact", "--check", "sandwich", "--family", "m3", "--t", "2", "--l", "1", "--u", "2", "--trials", "20",
    ]);
    assert!(out.status.success());
}

#[test]
fn rates_and_hashprops() {
    let r = json(&mosaic(&["rates", "--family", "m1", "--t", "3", "--q", "2"]));
    assert_eq!(r["result"]["verdict"], "near-optimal");
    let h = json(&mosaic(&["hashprops", "--family", "m1", "--t", "2", "--q", "3"]));
    assert_eq!(h["result"]["report"]["optimally_universal"], true);
    assert_eq!(h["result"]["report"]["spectrum_min"], h["result"]["report"]["spectrum_max"]);
}

#[test]
fn bounds_both_scenarios() {
    let wt = mosaic(&[
        "bounds",
        "--family",
        "m2",
        "--t",
        "2",
        "--l",
        "1",
        "--channel",
        "symmetric:0.1",
        "--prior",
        "point:1",
    ]);
    assert!(wt.status.success());
    let doc = json(&wt);
    assert_eq!(doc["result"]["dominates"], true);
    assert!(doc["result"]["coefficients"].is_object());
    let pa =
        mosaic(&["bounds", "--pa", "--family", "m4", "--k", "2", "--q", "3", "--source", "random:3", "--seed", "9"]);
    assert!(pa.status.success());
    assert_eq!(json(&pa)["result"]["exact"]["key_uniform_exact"], 1.0);
}

#[test]
fn channel_file_input_is_hashed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    std::fs::write(&path, "0.9,0.1\n0.1,0.9\n0.5,0.5\n0.5,0.5\n").unwrap();
    let spec = format!("file:{}", path.display());
    let a = json(&mosaic(&["bounds", "--family", "m1", "--t", "2", "--q", "2", "--channel", &spec]));
    std::fs::write(&path, "0.8,0.2\n0.1,0.9\n0.5,0.5\n0.5,0.5\n").unwrap();
    let b = json(&mosaic(&["bounds", "--family", "m1", "--t", "2", "--q", "2", "--channel", &spec]));
    assert_ne!(a["input_hash"], b["input_hash"]);
}

#[test]
fn simulate_is_reproducible() {
    let args = [
        "simulate", "--family", "m4", "--k", "2", "--q", "3", "--pa", "--source", "random:3", "--trials", "20000",
        "--seed", "5",
    ];
    let a = mosaic(&args);
    let b = mosaic(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r = &json(&a)["result"];
    assert_eq!(r["errors"], 0);
    assert_eq!(r["seed"], 5);
}
