//! End-to-end runs of the `anomaly-lab` binary: exit codes, determinism,
//! fixtures and report merging.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_anomaly-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn lines_of(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect()
}

#[test]
fn verify_single_suite_passes_and_emits_jsonl() {
    let o = run(&["verify", "--suite", "detp", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let lines = lines_of(&String::from_utf8(o.stdout).unwrap());
    let summary = lines.last().unwrap();
    assert_eq!(summary["type"], "summary");
    assert_eq!(summary["pass"], true);
    assert!(lines[..lines.len() - 1].iter().all(|l| l["type"] == "case" && l["suite"] == "detp"));
    assert_eq!(lines[0]["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn verify_text_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.txt");
    let o = run(&["verify", "--suite", "grassmann", "--format", "text", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS")));
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
}

#[test]
fn verify_is_deterministic_per_seed() {
    let strip = |o: Output| {
        lines_of(&String::from_utf8(o.stdout).unwrap())
            .into_iter()
            .map(|mut v| {
                for key in ["timestamp", "wall_time_s"] {
                    if let Some(obj) = v.as_object_mut() {
                        obj.remove(key);
                        if let Some(Value::Array(suites)) = obj.get_mut("suites") {
                            for s in suites {
                                s.as_object_mut().unwrap().remove(key);
                            }
                        }
                    }
                }
                v
            })
            .collect::<Vec<_>>()
    };
    let a = strip(run(&["verify", "--suite", "groupoid", "--seed", "9"]));
    let b = strip(run(&["verify", "--suite", "groupoid", "--seed", "9"]));
    let c = strip(run(&["verify", "--suite", "groupoid", "--seed", "10"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn tight_tolerance_reports_invariant_failure() {
    let o = run(&["verify", "--suite", "detp", "--tolerance", "detp.series=1e-300"]);
    assert_eq!(code(&o), 1);
    let lines = lines_of(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(lines.last().unwrap()["pass"], false);
}

#[test]
fn usage_errors_exit_two_without_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    for args in [
        vec!["verify", "--suite", "bogus"],
        vec!["verify"],
        vec!["verify", "--suite", "detp", "--tolerance", "detp.series=-1"],
        vec!["verify", "--suite", "detp", "--tolerance", "nope=1"],
        vec!["verify", "--suite", "fock", "--modes", "40"],
        vec!["frobnicate"],
    ] {
        let mut full = args.clone();
        full.extend(["--out", out.to_str().unwrap()]);
        let o = run(if args[0] == "frobnicate" { &args } else { &full });
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!out.exists(), "{args:?} wrote a report");
    }
}

#[test]
fn compute_detp_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "a.json", r#"{"rows":1,"cols":1,"data":[[0.5,0]]}"#);
    let o = run(&["compute", "detp", "--matrix", m.to_str().unwrap(), "--p", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["quantity"], "detp");
    let value = v["result"]["value"][0].as_f64().unwrap();
    assert!((value - 1.5 * (-0.5f64).exp()).abs() < 1e-15);
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn compute_omega_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"rows":1,"cols":1,"data":[[0.1,0]]}"#);
    let b = write(dir.path(), "b.json", r#"{"rows":1,"cols":1,"data":[[0,0]]}"#);
    let o = run(&["compute", "omega", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap(), "--p", "1"]);
    assert_eq!(code(&o), 0);
    let w = json(&o)["result"]["value"][0].as_f64().unwrap();
    assert!((w - 1.0).abs() < 1e-15);
}

#[test]
fn compute_schwinger_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", r#"{"rows":2,"cols":2,"data":[[0,0],[1,0],[0,0],[0,0]]}"#);
    let y = write(dir.path(), "y.json", r#"{"rows":2,"cols":2,"data":[[0,0],[0,0],[1,0],[0,0]]}"#);
    let pol = write(dir.path(), "pol.json", r#"{"dim":2,"plus_dim":1}"#);
    let o = run(&[
        "compute", "schwinger", "--x", x.to_str().unwrap(), "--y", y.to_str().unwrap(), "--polarization",
        pol.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!((v["result"]["value"][0].as_f64().unwrap() + 1.0).abs() < 1e-10);
    assert_eq!(v["inputs"].as_array().unwrap().len(), 3);
}

#[test]
fn compute_h2_of_generated_groupoid() {
    let dir = tempfile::tempdir().unwrap();
    let bz2 = write(
        dir.path(),
        "bz2.json",
        r#"{"objects":["*"],"arrows":[{"id":0,"src":0,"tgt":0},{"id":1,"src":0,"tgt":0}],
            "compose":[[0,0,0],[0,1,1],[1,0,1],[1,1,0]]}"#,
    );
    let o = run(&["compute", "h2", "--groupoid", bz2.to_str().unwrap(), "--modulus", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["result"]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(v["result"]["degree"], 2);

    let g = run(&["generate", "random-action-groupoid", "--seed", "4", "--max-order", "4", "--max-points", "2"]);
    assert_eq!(code(&g), 0);
    let path = write(dir.path(), "g.json", &String::from_utf8(g.stdout).unwrap());
    let o = run(&["compute", "h2", "--groupoid", path.to_str().unwrap(), "--modulus", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn generate_is_byte_identical_and_glues() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(&["generate", "refined-cover", "--seed", "12", "--modulus", "3"]);
    let b = run(&["generate", "refined-cover", "--seed", "12", "--modulus", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let path = write(dir.path(), "cover.json", &String::from_utf8(a.stdout).unwrap());
    let o = run(&["compute", "glue", "--data", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["result"]["centrality_violation"].as_f64(), Some(0.0));
    assert_eq!(v["result"]["diagnostic_failures"], 0);
    assert_eq!(v["result"]["modulus"], 3);

    for kind in ["random-hermitian", "random-unital"] {
        let x = run(&["generate", kind, "--seed", "1", "--dim", "3"]);
        let y = run(&["generate", kind, "--seed", "1", "--dim", "3"]);
        assert_eq!(code(&x), 0);
        assert_eq!(x.stdout, y.stdout);
    }
}

#[test]
fn generated_unital_feeds_detp() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u.json");
    let g = run(&["generate", "random-unital", "--seed", "8", "--dim", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&g), 0);
    let o = run(&["compute", "detp", "--matrix", out.to_str().unwrap(), "--p", "3"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["result"]["value"][0].is_number());
}

#[test]
fn format_and_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{not json");
    let o = run(&["compute", "detp", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["compute", "detp", "--matrix", missing.to_str().unwrap()])), 3);
    let short = write(dir.path(), "short.json", r#"{"rows":2,"cols":2,"data":[[1,0]]}"#);
    assert_eq!(code(&run(&["compute", "detp", "--matrix", short.to_str().unwrap()])), 3);

    // Parses, but p = 0 is not an order.
    let m = write(dir.path(), "m.json", r#"{"rows":1,"cols":1,"data":[[0.5,0]]}"#);
    assert_eq!(code(&run(&["compute", "detp", "--matrix", m.to_str().unwrap(), "--p", "0"])), 4);
    // Non-square perturbation.
    let rect = write(dir.path(), "rect.json", r#"{"rows":1,"cols":2,"data":[[0.5,0],[0,0]]}"#);
    assert_eq!(code(&run(&["compute", "detp", "--matrix", rect.to_str().unwrap()])), 4);
    // Oversize generation.
    assert_eq!(code(&run(&["generate", "random-hermitian", "--dim", "1000"])), 4);
}

#[test]
fn report_merges_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    assert_eq!(code(&run(&["verify", "--suite", "detp", "--out", a.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["verify", "--suite", "cohomology", "--out", b.to_str().unwrap()])), 0);
    let o = run(&["report", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let lines = lines_of(&String::from_utf8(o.stdout).unwrap());
    let summary = lines.last().unwrap();
    assert_eq!(summary["suites"].as_array().unwrap().len(), 2);
    let cases = lines.len() - 1;
    assert_eq!(summary["cases"].as_u64().unwrap() as usize, cases);

    let text = run(&["report", a.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code(&text), 0);
    assert!(String::from_utf8_lossy(&text.stdout).contains("detp"));

    let junk = write(dir.path(), "junk.jsonl", "{\"type\":\"case\"}\n");
    assert_eq!(code(&run(&["report", junk.to_str().unwrap()])), 3);
}
