use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};
use toric_gtc::cli::{run, Outcome};
use toric_gtc::generators::{batyrev_datum, tetragon_data};
use toric_gtc::json::{canonical, DatumJson};
use toric_gtc::polytope::LatticePolytope;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("toric-gtc").chain(args.iter().copied()))
}

fn ok_json(args: &[&str]) -> Value {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn cross() -> LatticePolytope {
    LatticePolytope::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap()
}

#[test]
fn classify_triple_nine() {
    assert_eq!(ok_json(&["classify-triple", "--b", "9"]), json!({"count": 3, "values": [2, 5, 8]}));
}

#[test]
fn mirror_twice_is_byte_identical() {
    let d = cli(&["batyrev", "--example", "cross-polytope"]).stdout;
    let m = cli(&["mirror", &d]).stdout;
    let mm = cli(&["mirror", &m]).stdout;
    assert_eq!(mm, d);
    assert_ne!(m, d);
}

#[test]
fn batyrev_matches_library() {
    let out = cli(&["batyrev", "--example", "cross-polytope"]).stdout;
    let lib = DatumJson::from_datum(&batyrev_datum(&cross()).unwrap().datum).unwrap();
    assert_eq!(out, canonical(&lib) + "\n");
}

#[test]
fn tetragon_matches_library() {
    let v = ok_json(&["tetragon", "--a", "2", "--b", "3", "--c", "1", "--d", "2"]);
    let t = tetragon_data(2, 3, 1, 2).unwrap();
    assert_eq!(v["consistent"], json!(true));
    assert_eq!(v["r2"], json!(t.r2));
    assert_eq!(v["formula_types"], json!(t.formula_types));
}

#[test]
fn abelian_hexagonal_report() {
    let v = ok_json(&["abelian", "--example", "hexagonal"]);
    let labels = |side: &str| {
        let mut l: Vec<String> = v[side]["components"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap().to_string()).collect();
        l.sort();
        l
    };
    assert_eq!(labels("f_side"), vec!["P1xP1"; 3]);
    assert_eq!(labels("q_side"), vec!["Bl3P2", "P2", "P2"]);
    assert_eq!(v["valid"], json!(true));
    assert_eq!(v["translation_invariant"], json!(true));
}

#[test]
fn emitted_json_round_trips() {
    let d = cli(&["batyrev", "--example", "cross-polytope"]).stdout;
    let runs: Vec<Vec<&str>> = vec![
        vec!["polar", "--example", "cross-polytope"],
        vec!["reflexive"],
        vec!["assemble", "--example", "triangle-231"],
        vec!["assemble", &d],
        vec!["chart", &d],
        vec!["spec-fan", "--example", "triangle-231"],
        vec!["tetragon", "--a", "1", "--b", "1", "--c", "0", "--d", "1"],
        vec!["validate", &d],
    ];
    for args in runs {
        let out = cli(&args);
        assert_eq!(out.code, 0, "{:?}: {}", args[0], out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(canonical(&v) + "\n", out.stdout, "{:?}", args[0]);
    }
}

#[test]
fn reflexive_sweep_finds_sixteen() {
    let v = ok_json(&["reflexive", "--check", "--jobs", "2"]);
    assert_eq!(v["count"], json!(16));
    assert_eq!(v["mirror_checked"], json!(16));
}

#[test]
fn exit_codes() {
    let bad = cli(&["spec-fan", r#"{"rank": 2, "rays": [["1", "0"], ["0", "x"]]}"#]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("rays[1][1]"), "{}", bad.stderr);
    assert_eq!(cli(&["batyrev", "[[2], [-2]]"]).code, 1);
    assert_eq!(cli(&["classify-triple", "--b", "8"]).code, 2);
    assert_eq!(cli(&["nonsense"]).code, 2);
    assert_eq!(cli(&["mirror", "{not json"]).code, 2);
    assert_eq!(cli(&["validate", "--example", "cross-polytope", "--mutate", "0"]).code, 0);
    let d = cli(&["batyrev", "--example", "cross-polytope"]).stdout;
    let broken = d.replacen("\"offset\": [\n        \"", "\"offset\": [\n        \"1", 1);
    assert_ne!(broken, d);
    assert_eq!(cli(&["validate", &broken]).code, 1);
}

#[test]
fn report_and_output_flags() {
    let out = cli(&["assemble", "--example", "cross-polytope", "--report"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.matches("P1").count(), 4);
    let path = std::env::temp_dir().join(format!("toric-gtc-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(cli(&["classify-triple", "--b", "15", "-o", p]).code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["values"], json!([2, 8, 14]));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn binary_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_toric-gtc")).args(["polar", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(b"[[1,0],[0,1],[-1,-1]]").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reflexive"], json!(true));
    assert_eq!(v["polar"].as_array().unwrap().len(), 3);
}
