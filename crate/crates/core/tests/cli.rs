use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

fn hpq(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hpq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn example(name: &str) -> String {
    let (code, out, _) = hpq(&["example", name, "--json"], None);
    assert_eq!(code, 0);
    out
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn analyze_pentagon() {
    let (code, out, _) = hpq(&["analyze", "-", "--json", "--exact-only"], Some(&example("pentagon")));
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["p"], 2);
    assert_eq!(v["q"], 2);
    assert_eq!(v["signature"], json("[2, 3]"));
    assert_eq!(v["ideal"], true);
    assert_eq!(v["convex_hulls"], 1);
    assert_eq!(v["verdict"], json(r#"{"finite":true,"stable_set":null,"boundary":null,"weights":null}"#));
    assert_eq!(v["estimate"], Value::Null);
}

#[test]
fn analyze_crown_with_estimate() {
    let (code, out, _) = hpq(&["analyze", "-", "--json", "--samples", "5000"], Some(&example("crown:2")));
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"]["stable_set"], json("[1, 3]"));
    assert_eq!(v["convex_hulls"], 2);
    assert_eq!(v["estimate"]["samples"], 5000);
    assert_eq!(v["estimate"]["seed"], 0xC0FFEE);
    let (code, text, _) = hpq(&["analyze", "-", "--exact-only"], Some(&example("crown:2")));
    assert_eq!(code, 0);
    assert!(text.contains("volume: infinite"), "{text}");
    assert!(text.contains("I = {1, 3}"), "{text}");
}

#[test]
fn estimate_keys() {
    let (code, out, _) = hpq(&["estimate", "-", "--json", "--radius", "4", "--samples", "1000", "--seed", "3"], Some(&example("pentagon")));
    assert_eq!(code, 0);
    let v = json(&out);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["R", "estimate", "samples", "seed", "std_error"]);
    assert_eq!(v["R"], 4.0);
    let (code, _, _) = hpq(&["estimate", "-", "--delta", "--sampler", "box", "--samples", "1000"], Some(&example("crown:1")));
    assert_eq!(code, 0);
}

#[test]
fn bad_inputs() {
    let (code, _, err) = hpq(&["analyze", "-"], Some("{not json"));
    assert_eq!(code, 2, "{err}");
    let degenerate = r#"{"p":1,"q":1,"gram":{"n":4,"entries":[[0,-1,0,-1],[-1,0,-1,0],[0,-1,0,-1],[-1,0,-1,0]]}}"#;
    let (code, _, err) = hpq(&["analyze", "-"], Some(degenerate));
    assert_eq!(code, 1, "{err}");
    assert!(err.contains("degenerate"), "{err}");
    let mismatch = example("pentagon").replace(r#""p":2"#, r#""p":3"#);
    let (code, _, _) = hpq(&["analyze", "-"], Some(&mismatch));
    assert_eq!(code, 1);
    let (code, _, _) = hpq(&["example", "hexagon"], None);
    assert_eq!(code, 2);
    let (code, _, _) = hpq(&["example", "crown:0"], None);
    assert_eq!(code, 1);
    let (code, _, _) = hpq(&["census", "--n", "9"], None);
    assert_eq!(code, 1);
    let (code, _, _) = hpq(&["analyze", "/nonexistent/file.json"], None);
    assert_eq!(code, 2);
    let (code, _, _) = hpq(&["frobnicate"], None);
    assert_eq!(code, 2);
}

#[test]
fn isometric_files() {
    let dir = std::env::temp_dir().join(format!("hpq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    std::fs::write(&a, example("pentagon")).unwrap();
    let scaled = r#"{"p":2,"q":2,"gram":{"n":5,"entries":[[0,-2,0,0,-3],[-2,0,-1,0,0],[0,-1,0,-5,0],[0,0,-5,0,-1],[-3,0,0,-1,0]]}}"#;
    std::fs::write(&b, scaled).unwrap();
    let (code, out, _) = hpq(&["isometric", a.to_str().unwrap(), b.to_str().unwrap(), "--json"], None);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["isometric"], true);
    std::fs::write(&b, example("h22-nonideal")).unwrap();
    let (_, out, _) = hpq(&["isometric", a.to_str().unwrap(), b.to_str().unwrap(), "--json", "--unmarked"], None);
    assert_eq!(json(&out)["isometric"], false);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tables() {
    let (code, out, _) = hpq(&["cycles", "--n", "8", "--json"], None);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["h1_dimension"], 1);
    assert_eq!(v["strata"][0]["signature"], json(r#"{"pos":3,"neg":3,"null":2}"#));
    let (code, out, err) = hpq(&["census", "--n", "2"], None);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 8);
    assert!(err.contains("8 graphs on 2 vertices"), "{err}");
    let (code, out, _) = hpq(&["h22-census", "--json"], None);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["passing_filter"], 218);
    assert_eq!(v["counterexamples"], json("[]"));
}
