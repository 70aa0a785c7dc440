use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vcoalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vcoalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_passing_fixtures() {
    for f in ["trivial.spec", "commutative4.spec", "commutative2_form.spec", "shifted_comodule.spec"] {
        let o = run(&["validate", path(&fixture(f))]);
        assert_eq!(code(&o), 0, "{f}: {}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn validate_mutant_names_a_multidegree() {
    let o = run(&["validate", path(&fixture("mutant_jacobi.spec")), "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["structure"], "mutant-jacobi");
    let jacobi = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "jacobi")
        .unwrap();
    assert_eq!(jacobi["status"], "fail");
    let m = jacobi["witness"]["multidegree"].as_str().unwrap();
    assert!(m.contains('x'), "{m}");
    for f in ["mutant_sign.spec", "mutant_comodule.spec"] {
        assert_eq!(code(&run(&["validate", path(&fixture(f))])), 1, "{f}");
    }
}

#[test]
fn json_reports_are_deterministic() {
    let file = fixture("commutative4.spec");
    let args = ["validate", path(&file), "--format", "json", "--window", "-6:6"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["window"], "x:[-6,6] x0:[-6,6] x1:[-6,6] x2:[-6,6]");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["structure", "window", "checks"]);
}

#[test]
fn classical_table_has_primitive_rows() {
    let o = run(&["classical", "--dim", "2", "--degree", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rows = v["delta"].as_array().unwrap();
    let find = |u: &str| rows.iter().find(|r| r["monomial"] == u).unwrap()["delta"].clone();
    assert_eq!(find("1"), "1*1|1");
    assert_eq!(find("e1"), "1*1|e1 + 1*e1|1");
    assert_eq!(find("e2"), "1*1|e2 + 1*e2|1");
    let cmp = v["comparison"].as_array().unwrap();
    let sq = cmp.iter().find(|c| c["monomial"] == "e1^2").unwrap();
    assert_eq!(sq["agree"], false);
    assert_eq!(sq["induced"], "1*1|e1^2 + 1*e1|e1 + 1*e1^2|1");
    assert_eq!(sq["multiplicative"], "1*1|e1^2 + 2*e1|e1 + 1*e1^2|1");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&run(&[])), 64);
    assert_eq!(code(&run(&["validate"])), 64);
    assert_eq!(code(&run(&["validate", "x.spec", "--window", "3:1"])), 64);
    assert_eq!(code(&run(&["validate", "x.spec", "--convention", "other"])), 64);
    assert_eq!(code(&run(&["classical", "--dim", "two", "--degree", "1"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn data_and_io_errors() {
    let o = run(&["validate", path(&fixture("weight_violation.spec"))]);
    assert_eq!(code(&o), 65);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("t, -1, t (line 25)"), "{err}");
    assert_eq!(code(&run(&["validate", "/nonexistent/file.spec"])), 66);
    let o = run(&["envelope", path(&fixture("commutative4.spec")), "--weight-cutoff", "2"]);
    assert_eq!(code(&o), 65);
}

#[test]
fn double_dualize_returns_the_tables() {
    let (once, twice) = (scratch("c4-dual.spec"), scratch("c4-dual-dual.spec"));
    assert_eq!(code(&run(&["dualize", path(&fixture("commutative4.spec")), "-o", path(&once)])), 0);
    assert_eq!(code(&run(&["dualize", path(&once), "-o", path(&twice)])), 0);
    let strip = |p: &Path| {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with("name ="))
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&twice), strip(&fixture("commutative4.spec")));
}

#[test]
fn abelian_envelope_dimensions() {
    let o = run(&[
        "envelope",
        path(&fixture("abelian_vla.spec")),
        "--weight-cutoff",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["dimensions"], serde_json::json!([1, 1, 2, 3, 5, 7]));
}

#[test]
fn heisenberg_pole_correlation() {
    let env = scratch("heisenberg-env.spec");
    let o = run(&[
        "envelope",
        path(&fixture("heisenberg_vla.spec")),
        "--weight-cutoff",
        "4",
        "-o",
        path(&env),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = run(&[
        "correlate",
        path(&env),
        "--functional",
        "a_{-1}1|a_{-1}1|1",
        "--vector",
        "K_{-1}1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let expr = v["correlations"][0]["expression"].as_str().unwrap();
    assert!(expr.ends_with("(x1 - x2)^2)"), "{expr}");
    let weak = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "K_{-1}1: weak-cocommutativity");
    assert!(weak.unwrap()["detail"].as_str().unwrap().starts_with("k = 2"));
}

#[test]
fn alternate_convention_runs() {
    let o = run(&[
        "validate",
        path(&fixture("virasoro_vla.spec")),
        "--convention",
        "alternate",
        "--format",
        "json",
    ]);
    let v = json(&o);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "lie-jacobi"));
    assert!([0, 1, 2].contains(&code(&o)));
}
