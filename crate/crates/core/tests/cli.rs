use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_betalink"));
    c.env_remove("BETALINK_BUDGET");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_stdin(args: &[&str], input: &str) -> (i32, String) {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = run(&a);
    assert!(code == 0 || code == 4, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "schemas", name].iter().collect();
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(schema_name: &str, v: &Value) {
    let s = schema(schema_name);
    if let Err(e) = s.validate(v) {
        panic!("{schema_name}: {e}\n{v}");
    }
}

#[test]
fn cochran_of_w2() {
    let (code, out, _) = run(&["invariant", "cochran", "family:W:2", "--order", "6"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("betas: [2, 0, 0, 0, 0, 0]"), "{out}");
    let v = json(&["invariant", "cochran", "family:W:2", "--order", "6"]);
    assert_eq!(v["value"]["betas"].to_string(), "[2,0,0,0,0,0]");
    assert_valid("invariant.schema.json", &v);
    assert_valid("cochran-series.schema.json", &v["value"]);
}

#[test]
fn conway_of_whitehead() {
    let (code, out, _) = run(&["invariant", "conway", "family:W:1"]);
    assert_eq!((code, out.trim()), (0, "z^3"));
}

#[test]
fn linked_input_points_to_hat_variant() {
    let hopf = "PD[X[1,3,2,4],X[3,1,4,2]]";
    let (code, out) = run_stdin(&["invariant", "lk", "-"], hopf);
    assert_eq!((code, out.trim()), (0, "1"));
    let out = bin().args(["invariant", "cochran", "-"]).stdin(Stdio::piped()).stderr(Stdio::piped()).spawn().and_then(|mut c| {
        c.stdin.take().unwrap().write_all(hopf.as_bytes()).unwrap();
        c.wait_with_output()
    });
    let out = out.unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hat_cochran"));
    let (code, _) = run_stdin(&["invariant", "cochran-hat", "-"], hopf);
    assert_eq!(code, 2);
}

#[test]
fn hat_with_explicit_band() {
    let hopf = "PD[X[1,3,2,4],X[3,1,4,2]]";
    let (code, out) = run_stdin(&["invariant", "bands", "-", "--format", "json"], hopf);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_valid("invariant.schema.json", &v);
    let bands = v["value"].as_array().unwrap();
    if let Some(b) = bands.first() {
        let (code, out) = run_stdin(&["invariant", "cochran-hat", "-", "--band", &b.to_string(), "--format", "json"], hopf);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"]["lk"], 1);
        assert_valid("invariant.schema.json", &v);
    }
}

#[test]
fn input_errors_exit_one() {
    let (code, _, err) = run(&["invariant", "lk", "-"]);
    assert_eq!(code, 1, "{err}");
    let (code, _) = run_stdin(&["invariant", "lk", "-"], "PD[X[1,2,3]");
    assert_eq!(code, 1);
    let (code, _, err) = run(&["invariant", "lk", "/nonexistent/file.pd"]);
    assert_ne!(code, 0, "{err}");
    let (code, _, _) = run(&["invariant", "cochran", "family:W:1", "--order", "0"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn budget_exhaustion_exits_three() {
    let (code, _, err) = run(&["invariant", "conway", "family:W:2", "--budget", "1"]);
    assert_eq!(code, 3, "{err}");
    let out = bin().env("BETALINK_BUDGET", "1").args(["invariant", "conway", "family:W:2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn series_commands() {
    let (code, out, _) = run(&["series", "expand", "--num", "z3", "--den", "1+z2", "--order", "9"]);
    assert_eq!((code, out.trim()), (0, "z^3 - z^5 + z^7 - z^9 + O(z^10)"));
    let v = json(&["series", "expand", "--num", "z3", "--den", "1+z2", "--order", "9"]);
    assert_valid("series.schema.json", &v);

    let (code, out, _) = run(&["series", "bm", "--coeffs", "1,2,6,20,70,252,924,3432,12870,48620,184756,705432"]);
    assert_eq!(code, 0);
    assert!(out.contains("no recurrence of order <= 5"), "{out}");
    let v = json(&["series", "bm", "--coeffs", "1,2,6,20,70,252,924,3432,12870,48620,184756,705432"]);
    assert_eq!(v["found"], false);
    assert_valid("recurrence.schema.json", &v);

    let v = json(&["series", "bm", "--coeffs", "1,1,1,1,1,1,1,1"]);
    assert_eq!(v["found"], true);
    let v = json(&["series", "fixtures", "central-binomial", "--order", "3"]);
    assert_eq!(v["coeffs"].to_string(), "[1,2,6,20]");
    assert_valid("series.schema.json", &v);
    let v = json(&["series", "hankel", "--coeffs", "1,1,2,6,24,120,720"]);
    assert_eq!(v.to_string(), "[1,2,3,4]");
    let (code, _, _) = run(&["series", "expand", "--num", "1", "--den", "z", "--order", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn wqo_commands() {
    let (code, out, _) = run(&["wqo", "embeds", "1,2", "1,1,2"]);
    assert_eq!((code, out.trim()), (0, "true"));
    let (_, out, _) = run(&["wqo", "embeds", "2,1", "1,1,2"]);
    assert_eq!(out.trim(), "false");
    let v = json(&["wqo", "pair", "1,2", "2,1", "1,1,2,1"]);
    assert_eq!(v.to_string(), "[1,3]");
    let table = r#"{"entries":[{"I":[1,1,2,2],"mu":2},{"I":[1,1,1,1,2,2],"mu":3}]}"#;
    let (code, out) = run_stdin(&["wqo", "mu-audit", "-", "--format", "json"], table);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_valid("mu-audit.schema.json", &v);
    assert_valid("mu-table.schema.json", &serde_json::from_str(table).unwrap());
    let (code, _, _) = run(&["wqo", "pair", "1,3"]);
    assert_eq!(code, 2);
}

#[test]
fn family_command() {
    let (code, out, _) = run(&["family", "W", "--params", "1,0,-1"]);
    assert_eq!(code, 0);
    let d = betalink::diagram::parse_pd(out.trim()).unwrap();
    assert_eq!(d.num_components(), 2);
    let v = json(&["family", "M", "--params", "1,-1"]);
    assert_eq!(v["name"], "M:1,-1");
    assert_valid("family.schema.json", &v);
}

#[test]
fn verify_commands() {
    for (check, src) in [
        ("theorem-a", "family:W:2"),
        ("rationality", "family:W:1,0,-1"),
        ("band-independence", "family:M:1,-1"),
        ("symmetries", "family:W:1"),
    ] {
        let (code, out, err) = run(&["verify", check, src, "--order", "8"]);
        assert_eq!(code, 0, "{check}: {out}{err}");
        assert!(out.starts_with("pass"), "{out}");
        let v = json(&["verify", check, src, "--order", "8"]);
        assert_eq!(v["pass"], true);
        assert_eq!(v["check"], check);
        assert_valid("verify-report.schema.json", &v);
    }
}

#[test]
fn short_data_does_not_certify_rationality() {
    let (code, out, _) = run(&["verify", "rationality", "family:W:1,0,-1", "--order", "4"]);
    assert_eq!(code, 4, "{out}");
}

#[test]
fn failed_checks_exit_four() {
    // A linked source makes the pipeline checks fail rather than crash.
    let hopf = "PD[X[1,3,2,4],X[3,1,4,2]]";
    let (code, _) = run_stdin(&["verify", "symmetries", "-"], hopf);
    assert_eq!(code, 4);
}

#[test]
fn output_is_independent_of_workers() {
    let a = run(&["invariant", "cochran", "family:M:1,-1", "--order", "5", "--workers", "1", "--format", "json"]);
    let b = run(&["invariant", "cochran", "family:M:1,-1", "--order", "5", "--workers", "4", "--format", "json"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_valid("invariant.schema.json", &v);
}

#[test]
fn every_invariant_validates() {
    for kind in ["lk", "writhe", "conway", "sato-levine", "cochran", "colorings", "bands"] {
        let v = json(&["invariant", kind, "family:W:-1", "--order", "3"]);
        assert_eq!(v["invariant"], kind);
        assert_valid("invariant.schema.json", &v);
    }
    let v = json(&["verify", "theorem-a", "family:W:1", "--order", "3"]);
    assert_valid("theorem-a.schema.json", &v["items"][0]["detail"]);
    let band = &json(&["invariant", "bands", "family:W:1"])["value"][0];
    assert_valid("band.schema.json", band);
}
