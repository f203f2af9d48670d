use std::io::Write;
use std::process::{Command, Output};

fn fvw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fvw"))
        .args(args)
        .env_remove("FVW_SEED")
        .output()
        .expect("fvw runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn parse_prints_canonical_forms() {
    let out = fvw(&["parse", "x1*(x2+1) - 1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["canonical"], "x1*x2 + x1 - 1/2");
    assert_eq!(v["roundtrip"], true);
    let out = fvw(&["--field", "Q(sqrt 2)", "parse", "(1+s)*x1"]);
    assert_eq!(json(&out)["canonical"], "(1+s)*x1");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(fvw(&["parse", "x1 +"]).status.code(), Some(2));
    assert_eq!(fvw(&["parse", "x0"]).status.code(), Some(2));
    assert_eq!(fvw(&["--field", "Q(sqrt 4)", "parse", "x1"]).status.code(), Some(2));
    assert_eq!(fvw(&["derived-ops", "--zero", "1", "--one", "1"]).status.code(), Some(2));
    assert_eq!(fvw(&["check", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(fvw(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn apply_hom_infers_objects() {
    let v = json(&fvw(&["--variety", "group", "apply-hom", "--map", "x1 -> x1*x3", "x1*x2^-1"]));
    assert_eq!(v["result"], "x1*x3*x2^-1");
    assert_eq!(v["source"], "2");
    assert_eq!(v["target"], "3");
    let v = json(&fvw(&["--variety", "rep", "apply-hom", "--map", "y1 -> y1*([x1]), x1 -> x1^2", "(y1 ; x1)"]));
    assert_eq!(v["result"], "(y1*([x1]) ; x1^2)");
}

#[test]
fn derived_ops_and_endo1() {
    let v = json(&fvw(&["derived-ops", "--zero", "1", "--one", "3", "--dual"]));
    assert_eq!(v["k"], "1/2");
    assert_eq!(v["x1 ⊥ x2"], "x1 + x2 - 1");
    assert_eq!(v["central_map"], "2*x1 + 1");
    let v = json(&fvw(&["endo1", "compose", "(y1*([x1]) ; x1^2)", "(y1*(1 + [x1]) ; x1^3)"]));
    assert_eq!(v["a∘b"], "(y1*([x1^3] + [x1]) ; x1^6)");
}

#[test]
fn reports_and_verdicts() {
    let out = fvw(&["enumerate-sem", "--max-len", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["survivors"], serde_json::json!(["xy", "yx"]));
    let out = fvw(&["action-kernel", "--window", "-2..2", "--rho", "dual"]);
    assert_eq!(json(&out)["result"]["survivors"], serde_json::json!(["[x1^-1]"]));
    let out = fvw(&["solve-derived"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "PASS");
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS"));
}

#[test]
fn fvw_seed_overrides_the_flag() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_fvw"));
        c.args(["--seed", "3", "--samples", "5", "check", "--suite", "central-map"]);
        match env {
            Some(s) => c.env("FVW_SEED", s),
            None => c.env_remove("FVW_SEED"),
        };
        c.output().unwrap()
    };
    assert_eq!(json(&run(None))["seed"], 3);
    assert_eq!(json(&run(Some("99")))["seed"], 99);
    assert_eq!(run(Some("abc")).status.code(), Some(2));
    // same seed, same bytes
    assert_eq!(run(Some("99")).stdout, run(Some("99")).stdout);
}

#[test]
fn decompose_reads_files() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"variety": "assoc", "field": "Q(sqrt 3)", "orientation": "mirror", "phi": "conj",
            "inner": {{"2": {{"x1": "x1 + x2^2"}}}}}}"#
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let out = fvw(&["--samples", "10", "decompose", "--aut", path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["result"]["phi"], "conj");
    assert_eq!(v["result"]["inner"]["2"][0], "x2^2 + x1");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, r#"{{"variety": "group", "inner": {{"2": {{"x1": "x2"}}}}}}"#).unwrap();
    let out = fvw(&["decompose", "--aut", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fvw(&["decompose", "--aut", "/nonexistent.json"]).status.code(), Some(2));
}
