use std::path::Path;
use std::process::{Command, Output};

use sasakian_curves::sampled::SampledCurve;

fn sasakian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sasakian")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

const PAR_CIRCLE: &str = r#"{"kind":"par-circle","n":2,"c1":[0.4370160244488211,0.0]}"#;
const HELIX: &str = r#"{"kind":"par-helix","n":2,"beta0_cos2":0.9,"sign":"-","c1":[0.31622776601683794,0.0]}"#;

#[test]
fn selfcheck_passes_and_is_deterministic() {
    let a = sasakian(&["selfcheck", "--seed", "7"]);
    let b = sasakian(&["selfcheck", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("result: pass (8/8)"));
}

#[test]
fn corrupted_connection_is_caught() {
    let o = sasakian(&["selfcheck", "--corrupt-connection"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first failing identity: metric-compatibility"), "{}", stdout(&o));
}

#[test]
fn generate_writes_the_requested_rows() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "p.json", PAR_CIRCLE);
    let out = path(dir.path(), "out.csv");
    let end = (4.0 * std::f64::consts::PI / ((5f64.sqrt() - 1.0) / 2.0)).to_string();
    let o = sasakian(&["generate", "--params", &params, "--span", "0", &end, "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = SampledCurve::read_csv(std::fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(s.len(), 256);
    assert!(stdout(&o).contains("reference coordinate block differs"));
}

#[test]
fn bad_perp_norm_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "p.json", r#"{"kind":"perp-circle","n":2,"beta0":1.0471975511965976,"c1":[0.5,0.0]}"#);
    let o = sasakian(&["generate", "--params", &params, "--out", &path(dir.path(), "o.csv")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("norm constraint"), "{}", stderr(&o));
}

#[test]
fn generate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "p.json", HELIX);
    let csv = path(dir.path(), "h.csv");
    let o = sasakian(&["generate", "--params", &params, "--samples", "20000", "--out", &csv]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = path(dir.path(), "r.json");
    let o = sasakian(&["verify", "--csv", &csv, "--report", &report]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).starts_with("verdict: pass"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["source"], "sampled");

    let o = sasakian(&["verify", "--params", &params]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn verify_needs_an_input() {
    assert_eq!(sasakian(&["verify"]).status.code(), Some(2));
}

#[test]
fn classify_examples() {
    let o = sasakian(&["classify", "--c", "-3", "--mode", "par", "--beta0-cos2", "0.9", "--sign", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut roots: Vec<f64> = v["solutions"].as_array().unwrap().iter().map(|s| s["kappa1"].as_f64().unwrap()).collect();
    roots.sort_by(f64::total_cmp);
    let r5 = 5f64.sqrt();
    assert_eq!(roots.len(), 2);
    assert!((roots[0] - (3.0 - r5) / 10.0).abs() < 1e-12 && (roots[1] - (3.0 + r5) / 10.0).abs() < 1e-12);

    let o = sasakian(&["classify", "--c", "1", "--kappa1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("circle"));

    let o = sasakian(&["classify", "--c", "-3", "--mode", "par", "--beta0-cos2", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ode_generate_writes_samples() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "p.json", HELIX);
    let out = path(dir.path(), "o.csv");
    let o = sasakian(&["ode-generate", "--params", &params, "--h", "0.01", "--span", "0", "5", "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = SampledCurve::read_csv(std::fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(s.len(), 501);
}

#[test]
fn malformed_csv_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "bad.csv", "s,x1\n0,not-a-number\n");
    let o = sasakian(&["verify", "--csv", &csv]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}
