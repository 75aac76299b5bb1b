use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

fn qcohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcohom")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn ammann_kramer_report() {
    let out = qcohom(&["invariants", &fixture("ammann_kramer.toml"), "--json"]);
    let v = json(&out);
    let r = &v["rank_report"];
    assert_eq!(strings(&r["d"]), ["180", "71", "12", "1"]);
    assert_eq!(r["k0_rank"], "192");
    assert_eq!(r["k1_rank"], "72");
    assert_eq!(r["e"], "120");
    assert_eq!(v["orbit_summary"]["counts"], serde_json::json!([32, 46, 15]));
    assert_eq!(v["obstruction"]["verdict"], "NO_OBSTRUCTION");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
    // Determinism: a second run is byte-identical.
    let again = qcohom(&["invariants", &fixture("ammann_kramer.toml"), "--json"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn reports_match_the_schema() {
    let validator = schema();
    for name in ["fibonacci.toml", "codim1_two_interval.toml", "octagonal.toml", "penrose.toml", "fibonacci_scheme.toml"] {
        let v = json(&qcohom(&["invariants", &fixture(name), "--json"]));
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("qcohom-report-{}.json", std::process::id()));
    let out = qcohom(&["invariants", &fixture("octagonal.toml"), "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(schema().is_valid(&v));
    std::fs::remove_file(path).ok();
    // Human-readable layout: counts, then ranks, then K.
    let stdout = String::from_utf8(out.stdout).unwrap();
    let pos = |s: &str| stdout.find(s).unwrap_or_else(|| panic!("missing {s}"));
    assert!(pos("counts") < pos("\nR\n") && pos("\nR\n") < pos("\nD\n") && pos("\nD\n") < pos("\nK\n"));
}

#[test]
fn generic_scheme_is_obstructed_by_divisibility() {
    let v = json(&qcohom(&["obstruction", &fixture("penrose_generic5.toml"), "--json"]));
    assert_eq!(v["obstruction"]["verdict"], "INFINITELY_GENERATED");
    let rules: Vec<&str> = v["obstruction"]["reasons"].as_array().unwrap().iter().map(|r| r["rule"].as_str().unwrap()).collect();
    assert!(rules.contains(&"rank-divisibility"), "{rules:?}");
}

#[test]
fn codim1_cohomology() {
    let v = json(&qcohom(&["invariants", &fixture("fibonacci.toml"), "--json"]));
    assert_eq!(strings(&v["rank_report"]["cohomology"]), ["1", "2"]);
    let v = json(&qcohom(&["invariants", &fixture("codim1_two_interval.toml"), "--json"]));
    assert_eq!(strings(&v["rank_report"]["cohomology"]), ["1", "3"]);
}

#[test]
fn arrangement_listing() {
    let v = json(&qcohom(&["arrangement", &fixture("penrose.toml"), "--json"]));
    let hs = v["hyperplanes"].as_array().unwrap();
    assert_eq!(hs.len(), 10);
    assert!(hs.iter().all(|h| h["stabilizer_rank"] == 2));
    let v = json(&qcohom(&["arrangement", &fixture("ammann_kramer.toml"), "--json"]));
    assert_eq!(v["derived"]["hyperplane_classes"], 15);
    assert_eq!(v["derived"]["rk_gamma"], 6);
}

#[test]
fn domain_errors_exit_with_one() {
    let dir = std::env::temp_dir();
    let both = dir.join(format!("qcohom-both-{}.toml", std::process::id()));
    std::fs::write(
        &both,
        "version = 1\n[field]\nmin_poly = [-1, 1, 1]\nroot_interval = [\"1/2\", \"1\"]\n\
         [codim1]\ngenerators = [[1]]\nintervals = [[[0], [1]]]\n\
         [arrangement]\ndim_v = 1\ngamma = [[[1]]]\nhyperplanes = [{ normal = [[1]] }]\n",
    )
    .unwrap();
    let out = qcohom(&["validate", both.to_str().unwrap()]);
    std::fs::remove_file(&both).ok();
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "parse");

    let out = qcohom(&["invariants", &fixture("toy_codim2.toml")]);
    assert_eq!(out.status.code(), Some(1));
    let out = qcohom(&["validate", "/nonexistent/file.toml"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(qcohom(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qcohom(&["invariants"]).status.code(), Some(2));
    assert_eq!(qcohom(&["pattern", &fixture("octagonal.toml"), "--out", "x.csv"]).status.code(), Some(2));
}

#[test]
fn pattern_export() {
    let path = std::env::temp_dir().join(format!("qcohom-fib-{}.csv", std::process::id()));
    let out = qcohom(&[
        "pattern",
        &fixture("fibonacci_scheme.toml"),
        "--radius",
        "20",
        "--offset",
        r#"["1/97", "3/107"]"#,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(csv.starts_with("z0,z1,proj0,proj_decimal0\n"));
    assert!(csv.lines().count() > 20);

    let svg = std::env::temp_dir().join(format!("qcohom-oct-{}.svg", std::process::id()));
    let out = qcohom(&["pattern", &fixture("octagonal.toml"), "--radius", "3", "--format", "svg", "--out", svg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<circle"));
    std::fs::remove_file(&svg).ok();

    let out = qcohom(&["pattern", &fixture("fibonacci.toml"), "--radius", "3", "--out", "unused.csv"]);
    assert_eq!(out.status.code(), Some(1));
    let out = qcohom(&["pattern", &fixture("fibonacci_scheme.toml"), "--radius=-1", "--out", "unused.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let out = qcohom(&["selftest", "--seed", "11", "--threads", "4"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 6, "{text}");
}
