use std::path::PathBuf;
use std::process::{Command, Output};

use seamtqft::surface::ClosedSeamedSurface;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_seamtqft"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(TempDir::new().unwrap())
    }

    fn put(&self, name: &str, body: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }
}

const CIRCLE: &str = r#"{"circles":[{"parent":null,"marks":[]}]}"#;
const CUPS: &str = r#"[{"word":[["cup"]]},{"word":[["cup"],["dot",0]]}]"#;

#[test]
fn genus_three_value() {
    let f = Files::new();
    let g3 = f.put("genus3.json", r#"{"facets":[{"genus":3}]}"#);
    let o = run(&["eval", &g3]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2*E1^2 - 8*E2");
}

#[test]
fn eval_json_fields() {
    let f = Files::new();
    let s = f.put("sphere.json", r#"{"facets":[{"dots":1}],"seams":[]}"#);
    let o = run(&["eval", "--json", &s]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "1");
    assert_eq!(v["degree"], 0);
    assert_eq!(v["omega"], "1");
}

#[test]
fn eval_word_and_omega() {
    let f = Files::new();
    let w = f.put("w.json", r#"{"word":[["cup"],["dot",0],["sigma+",0],["cap",0]]}"#);
    assert_eq!(stdout(&run(&["eval", &w])).trim(), "-1");
    assert_eq!(stdout(&run(&["eval", "--omega", &w])).trim(), "w");
}

#[test]
fn gram_of_cups() {
    let f = Files::new();
    let (m, c) = (f.put("s1.json", CIRCLE), f.put("cups.json", CUPS));
    let o = run(&["gram", &m, &c]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("[[0,1],[1,E1]]"));
    assert_eq!(lines.next(), Some("det: -1"));
    let o = run(&["--json", "rank", &m, &c]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["graded_rank"], "q^-1 + q");
}

#[test]
fn missing_file_is_validation_error() {
    let o = run(&["eval", "--omega", "missing.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn schema_errors_carry_pointers() {
    let f = Files::new();
    let bad = f.put("bad.json", r#"{"facets":[{"genus":1},{"genus":"x"}]}"#);
    let o = run(&["eval", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/facets/1/genus"), "{}", stderr(&o));
    let bad_word = f.put("badword.json", r#"{"word":[["cup"],["frobnicate"]]}"#);
    let o = run(&["eval", &bad_word]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/word/1"), "{}", stderr(&o));
}

#[test]
fn invalid_topology_is_validation_error() {
    let f = Files::new();
    let open = f.put("open.json", r#"{"word":[["cup"]]}"#);
    assert_eq!(run(&["eval", &open]).status.code(), Some(1));
    let dangling = f.put("dangling.json", r#"{"facets":[{"slots":1}]}"#);
    assert_eq!(run(&["eval", &dangling]).status.code(), Some(1));
}

#[test]
fn closed_surface_round_trips() {
    let f = Files::new();
    let w = f.put("torus.json", r#"{"word":[["cup"],["copants",0],["sigma+",1],["pants",0,1],["dot",0],["cap",0]]}"#);
    let o = run(&["close", &w]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let parsed: ClosedSeamedSurface = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), text.trim());
    let s = f.put("closed.json", &text);
    assert_eq!(stdout(&run(&["eval", &s])), stdout(&run(&["eval", &w])));
}

#[test]
fn induced_sigma_matrix() {
    let f = Files::new();
    let s = f.put("sigma.json", &format!(r#"{{"start":{CIRCLE},"word":[["sigma+",0]]}}"#));
    let o = run(&["induced", &s, "std", "std"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "[[1, E1], [0, -1]]");
}

#[test]
fn verify_report_is_deterministic() {
    let args = ["verify", "--suite", "all", "--trials", "4", "--seed", "3"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["seed"], 3);
    assert!(!v["relations"].as_array().unwrap().is_empty());
}

#[test]
fn verify_flags_mutant() {
    let o = run(&["verify", "--trials", "6", "--seed", "1", "--mutate-sigma"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("FAIL"));
}

#[test]
fn verify_unknown_relation() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(1));
}

#[test]
fn classify_examples() {
    let o = run(&["--json", "classify", "--char", "0", "--a1", "0", "--a2", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "separable_field");
    let o = run(&["classify", "--char", "0", "--a1", "0", "--a2", "-1"]);
    assert!(stdout(&o).starts_with("split_product"), "{}", stdout(&o));
    assert_eq!(run(&["classify", "--char", "4", "--a1", "0", "--a2", "1"]).status.code(), Some(1));
}

#[test]
fn frobenius_suite_passes() {
    let o = run(&["frob", "--ring", "R_D", "--check", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("ok ")));
    let o = run(&["--json", "frob"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rings: std::collections::BTreeSet<&str> =
        v.as_array().unwrap().iter().map(|r| r["ring"].as_str().unwrap()).collect();
    assert_eq!(rings.len(), 8);
    assert_eq!(run(&["frob", "--ring", "Q"]).status.code(), Some(1));
}
