use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stripfol")).args(args).output().expect("spawn stripfol")
}

fn run_data(cmd: &[&str], files: &[&str]) -> Output {
    let paths: Vec<String> = files.iter().map(|f| data(f).to_string_lossy().into_owned()).collect();
    let mut args: Vec<&str> = cmd.to_vec();
    args.extend(paths.iter().map(String::as_str));
    run(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn validate_exit_codes() {
    let ok = run_data(&["validate"], &["cylinder.strip"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json(&ok)["ok"], true);

    let bad = run_data(&["validate"], &["self_pair.strip"]);
    assert_eq!(code(&bad), 2);
    assert_eq!(json(&bad)["issues"][0]["code"], "SELF_PAIR");

    let missing = run(&["validate", "/nonexistent/surface.strip"]);
    assert_eq!(code(&missing), 3);
    assert!(stderr(&missing).contains("error[IO]"));
}

#[test]
fn validate_reports_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.strip");
    std::fs::write(&p, "strip A top (0,1.5)\nglue A.top[0] ~ B.bottom[0] +\n").unwrap();
    let out = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    let codes: Vec<&str> = v["parse_errors"].as_array().unwrap().iter().map(|e| e["code"].as_str().unwrap()).collect();
    assert!(codes.contains(&"BAD_RATIONAL"), "{codes:?}");
    assert!(codes.contains(&"UNKNOWN_REF"), "{codes:?}");
}

#[test]
fn leaves_reports() {
    let cyl = run_data(&["leaves", "--json"], &["cylinder.strip"]);
    assert_eq!(code(&cyl), 0);
    let kinds: Vec<String> = json(&cyl).as_array().unwrap().iter().map(|r| r["kind"].as_str().unwrap().to_owned()).collect();
    assert_eq!(kinds.iter().filter(|k| *k == "glued_c1").count(), 1);

    let red = run_data(&["leaves", "--json"], &["reduced.strip"]);
    let kinds: Vec<String> = json(&red).as_array().unwrap().iter().map(|r| r["kind"].as_str().unwrap().to_owned()).collect();
    assert!(!kinds.iter().any(|k| k == "glued_c1" || k == "glued_c2"), "{kinds:?}");

    assert_eq!(code(&run_data(&["leaves"], &["self_pair.strip"])), 2);

    let text = run_data(&["leaves"], &["cylinder.strip"]);
    assert_eq!(String::from_utf8_lossy(&text.stdout), "A.interior\tinternal\tA\nA.top[0]\tglued_c1\tA.top[0] A.bottom[0]\n");
}

#[test]
fn reduce_verdicts() {
    let moe = json(&run_data(&["reduce"], &["moebius.strip"]));
    assert_eq!(moe["components"][0]["verdict"], "moebius");

    let path = json(&run_data(&["reduce"], &["path3.strip"]));
    let comps = path["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["verdict"], "reduced");
    assert_eq!(comps[0]["surface"]["strips"].as_array().unwrap().len(), 1);
    assert_eq!(comps[0]["trace"].as_array().unwrap().len(), 2);

    let multi = json(&run_data(&["reduce"], &["two_components.strip"]));
    let verdicts: Vec<&str> = multi["components"].as_array().unwrap().iter().map(|c| c["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts, ["moebius", "reduced"]);
}

#[test]
fn reduce_emit_writes_the_same_json() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.json");
    let out = run(&["reduce", data("path3.strip").to_str().unwrap(), "--emit", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&out_path).unwrap(), out.stdout);
}

#[test]
fn check_h0_exit_codes() {
    let ok = run_data(&["check-h0"], &["reduced.strip", "reduced_identity.json"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json(&ok)["in_H0"], true);

    let swap = run_data(&["check-h0"], &["twin.strip", "twin_swap.json"]);
    assert_eq!(code(&swap), 1);
    let v = json(&swap);
    assert_eq!(v["in_H0"], false);
    assert!(v["failures"].as_array().unwrap().iter().all(|f| f["condition"] == "A"));

    let not_reduced = run_data(&["check-h0"], &["cylinder.strip", "reduced_identity.json"]);
    assert_eq!(code(&not_reduced), 2);
    assert!(stderr(&not_reduced).contains("NOT_REDUCED"));

    let wrong_surface = run_data(&["check-h0"], &["twin.strip", "reduced_identity.json"]);
    assert_eq!(code(&wrong_surface), 2);
    assert!(stderr(&wrong_surface).contains("INVALID_SHADOW"));
}

#[test]
fn orientable_and_fmt() {
    assert_eq!(code(&run_data(&["orientable"], &["cylinder.strip"])), 0);
    let moe = run_data(&["orientable"], &["moebius.strip"]);
    assert_eq!(code(&moe), 1);
    assert_eq!(json(&moe)["orientable"], false);
    assert_eq!(code(&run_data(&["orientable"], &["two_components.strip"])), 2);

    let fmt = run_data(&["fmt"], &["cylinder.strip"]);
    assert_eq!(String::from_utf8_lossy(&fmt.stdout), "strip A\n  top (-2,2)\n  bottom (-2,2)\nglue A.top[0] ~ A.bottom[0] +\n");
}

fn csv_rows(out: &Output) -> Vec<[f64; 4]> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,xp,yp"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|f| f.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

#[test]
fn eval_banded_grid() {
    let out = run(&["eval", "--map", "banded", "--grid", "3x3"]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 9);
    // the middle row is y = 0, where the map is sigma
    let mid = rows[3];
    assert_eq!((mid[0], mid[1]), (-10.0, 0.0));
    assert!((mid[2] + 10.0 / 101f64.sqrt()).abs() < 1e-15);
}

#[test]
fn eval_contraction_at_one_is_the_identity() {
    let dir = tempfile::tempdir().unwrap();
    let lambda = dir.path().join("lambda.json");
    std::fs::write(&lambda, r#"{"levels":[{"y":-0.5,"map":[[0,0],[1,3]]},{"y":0.5,"map":[[0,1],[1,2]]}]}"#).unwrap();
    let out = run(&["eval", "--map", "contraction", "--t", "1", "--grid", "5x4", "--lambda", lambda.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    for r in csv_rows(&out) {
        assert_eq!((r[0], r[1]), (r[2], r[3]));
    }
    let half = run(&["eval", "--map", "contraction", "--t", "0.5", "--grid", "5x4", "--lambda", lambda.to_str().unwrap()]);
    assert!(csv_rows(&half).iter().any(|r| r[0] != r[2]));
}

#[test]
fn eval_chain_is_the_identity_outside_bands() {
    let out = run(&["eval", "--map", "chain", "--grid", "7x13", "--yrange", "\u{2212}3..3"]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 91);
    for r in &rows {
        let dist = (r[1] - 2.0 * (r[1] / 2.0).round_ties_even()).abs();
        assert_eq!(r[3], r[1]);
        if dist >= 0.5 {
            assert_eq!(r[2], r[0], "moved at {r:?}");
        }
    }
    assert!(rows.iter().any(|r| r[2] != r[0]));
}

#[test]
fn eval_output_file_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("grid.svg");
    let out = run(&["eval", "--map", "raw", "--grid", "4x4", "--out", "svg", "--output", p.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let svg = std::fs::read_to_string(&p).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 4);
}

#[test]
fn eval_rejects_bad_input() {
    assert_eq!(code(&run(&["eval", "--map", "banded", "--yrange", "-2..2"])), 2);
    assert_eq!(code(&run(&["eval", "--map", "contraction", "--t", "1.5"])), 2);
    assert_eq!(code(&run(&["eval", "--map", "banded", "--grid", "1x5"])), 2);
    assert_eq!(code(&run(&["eval", "--map", "nope"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}
