use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use symclass::components::{diagonal_representative, n_representative, DEFAULT_K_MAX};
use symclass::signatures::Sign;
use symclass::WonenburgerTriple;
use symclass_cli::report::ReportDocument;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_symclass"));
    c.env_remove("SYMCLASS_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn blocks(t: &WonenburgerTriple) -> Value {
    json!({"n": 2, "A": t.a().to_vec(), "B": t.b().to_vec(), "C": t.c().to_vec()})
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_vec(v).unwrap()).unwrap();
    p
}

fn family_doc(entries: impl IntoIterator<Item = (f64, WonenburgerTriple)>) -> Value {
    let fam: Vec<Value> = entries
        .into_iter()
        .map(|(s, t)| {
            let mut v = blocks(&t);
            v["param"] = json!(s);
            v
        })
        .collect();
    json!({"schema": 1, "family": fam})
}

/// `μ₂ = 0.5 + 0.8s` passes through `1` at `s = 0.625`.
fn crossing_family() -> Value {
    family_doc((0..41).map(|i| {
        let s = i as f64 / 40.0;
        let m2 = 0.5 + 0.8 * s;
        (s, diagonal_representative([0.2, m2], [Sign::Positive, Sign::Positive]))
    }))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn classify_e2_normal_form() {
    let dir = TempDir::new().unwrap();
    let t = diagonal_representative([-0.3, 0.5], [Sign::Negative, Sign::Negative]);
    let f = write(&dir, "e2.json", &blocks(&t));
    let o = run(&["classify", p(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r: ReportDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.stratum.unwrap().code(), "E2");
    assert_eq!(r.labels.as_ref().unwrap().spi, "E2(-,-)");
    assert!(r.component.is_some());
    assert_eq!(r.strongly_stable_sheet, Some(true));
    assert_eq!(r.stability.name(), "strongly-stable");
    assert_eq!(r.input_sha256.len(), 64);
    let k = r.krein.unwrap();
    assert!(k.iter().all(|e| e.p == 0 && e.q == 1));
}

#[test]
fn report_survives_a_json_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "n.json", &blocks(&n_representative(1.4, 0.9)));
    let out = stdout(&run(&["classify", p(&f), "--quotient", "sp4"]));
    let r: ReportDocument = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out);
    assert_eq!(r.stratum.unwrap().code(), "N");
    assert!(r.b_types.is_none());
}

#[test]
fn identity_is_a_singular_point() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "id.json", &blocks(&WonenburgerTriple::identity(2)));
    let o = run(&["classify", p(&f)]);
    assert!(o.status.success());
    let r: ReportDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.stratum.unwrap().code(), "(2,1)");
    assert!(r.bifurcation_locus);
    assert!(r.component.is_none());
    assert!(r.notes.iter().any(|n| n.contains("bifurcation locus")));
}

#[test]
fn full_matrix_input_matches_blocks() {
    let dir = TempDir::new().unwrap();
    let t = diagonal_representative([-1.5, 0.4], [Sign::Positive, Sign::Negative]);
    let a = write(&dir, "a.json", &blocks(&t));
    let m = write(&dir, "m.json", &json!({"M": t.assemble().to_vec()}));
    let mut ra: ReportDocument = serde_json::from_str(&stdout(&run(&["classify", p(&a)]))).unwrap();
    let mut rm: ReportDocument = serde_json::from_str(&stdout(&run(&["classify", p(&m)]))).unwrap();
    ra.input_sha256.clear();
    rm.input_sha256.clear();
    assert_eq!(ra, rm);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"A\": [1,").unwrap();
    let o = run(&["classify", p(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("malformed JSON"));

    assert_eq!(run(&["classify", p(&dir.path().join("missing.json"))]).status.code(), Some(1));

    let v = write(&dir, "v.json", &json!({"A": [2, 0, 0, 1], "B": [1, 0, 0, 0], "C": [1, 0, 0, 0]}));
    let o = run(&["classify", p(&v)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("A^2 - BC = I violated: residual"));

    let e2 = write(&dir, "e2.json", &blocks(&diagonal_representative([0.1, 0.2], [Sign::Positive; 2])));
    let o = bin().args(["classify", p(&e2)]).env("SYMCLASS_TOL", "-1").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tolerance_comes_from_environment() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e2.json", &blocks(&diagonal_representative([0.1, 0.2], [Sign::Positive; 2])));
    let o = bin().args(["classify", p(&f)]).env("SYMCLASS_TOL", "1e-7").output().unwrap();
    let r: ReportDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.tol, 1e-7);
}

#[test]
fn normal_form_command() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "n.json", &blocks(&n_representative(0.8, 2.0)));
    let o = run(&["normal-form", p(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["stratum"], "N");
    let params = v["parameters"].as_array().unwrap();
    assert!((params[0].as_f64().unwrap() - 0.8).abs() < 1e-9);
    assert!((params[1].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn family_crossing_plus_one_is_obstructed() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fam.json", &crossing_family());
    let csv = dir.path().join("fam.csv");
    let o = run(&["family", p(&f), "--csv-out", p(&csv)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| l.contains("plus-one") && !l.starts_with("verdict"))
        .collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].contains("G+1"));
    let s: f64 = rows[0].split_whitespace().next().unwrap().parse().unwrap();
    assert!((s - 0.625).abs() < 1e-6);
    assert!(out.lines().last().unwrap().starts_with("verdict: obstructed"));

    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 42);
    assert!(text.lines().nth(1).unwrap().ends_with("\"E2(+,+)\""));
}

#[test]
fn family_json_format() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fam.json", &crossing_family());
    let o = run(&["family", p(&f), "--format", "json", "--quotient", "sp4"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quotient"], "sp4");
    assert_eq!(v["k_max"], DEFAULT_K_MAX);
    assert_eq!(v["verdict"]["verdict"], "obstructed");
}

#[test]
fn constant_family_has_no_events() {
    let dir = TempDir::new().unwrap();
    let t = diagonal_representative([0.1, 0.3], [Sign::Positive, Sign::Negative]);
    let f = write(&dir, "c.json", &family_doc((0..5).map(|i| (i as f64, t.clone()))));
    let o = run(&["family", p(&f)]);
    assert!(o.status.success());
    let out = stdout(&o);
    // header, column names, verdict
    assert_eq!(out.lines().count(), 3, "{out}");
    assert!(out.ends_with("verdict: single-component\n"));
}

#[test]
fn family_through_the_discriminant_stays_connected() {
    // E²(+,-) at τ = 0.6 into N as δ passes 0.09
    let dir = TempDir::new().unwrap();
    let fam = (0..20).map(|i| {
        let delta = 0.0805 + 0.001 * i as f64;
        let t = if delta < 0.09 {
            let d = (0.09 - delta).sqrt();
            diagonal_representative([0.3 - d, 0.3 + d], [Sign::Positive, Sign::Negative])
        } else {
            let r = delta.sqrt();
            n_representative(r, (0.3 / r).acos())
        };
        (i as f64, t)
    });
    let f = write(&dir, "d.json", &family_doc(fam));
    let o = run(&["family", p(&f), "--k-max", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.contains("discriminant-transition") && l.ends_with("Gd")), "{out}");
    assert!(out.ends_with("verdict: single-component\n"));
}

#[test]
fn family_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let t = diagonal_representative([0.1, 0.3], [Sign::Positive, Sign::Positive]);
    let f = write(&dir, "nm.json", &family_doc([(1.0, t.clone()), (0.5, t.clone())]));
    assert_eq!(run(&["family", p(&f)]).status.code(), Some(2));

    let u = diagonal_representative([0.1, 0.3], [Sign::Negative, Sign::Negative]);
    let f = write(&dir, "jump.json", &family_doc([(0.0, t), (1.0, u)]));
    let o = run(&["family", p(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-adjacent"));
}

#[test]
fn diagram_is_deterministic_and_complete() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    assert!(run(&["diagram", "--out", p(&a)]).status.success());
    assert!(run(&["diagram", "--out", p(&b)]).status.success());
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert_eq!(svg.matches(r#"class="region""#).count(), 7);
    for label in ["E² 4/4", "N 1/1", "H⁻⁺ 4/1"] {
        assert!(svg.contains(label), "{label}");
    }
    assert!(!svg.contains(r#"class="pencil""#));

    let o = run(&["diagram", "--k-max", "4", "--xrange=-3,3", "--yrange", "-2,3"]);
    let svg = stdout(&o);
    assert!(svg.contains(r#"data-k="3" data-l="1""#));
    assert!(svg.contains(r#"data-k="4" data-l="1""#));
}

#[test]
fn diagram_overlay_marks_events() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fam.json", &crossing_family());
    let o = run(&["diagram", "--overlay", p(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = stdout(&o);
    let report: Value =
        serde_json::from_str(&stdout(&run(&["family", p(&f), "--format", "json"]))).unwrap();
    let events = report["events"].as_array().unwrap().len();
    assert!(events >= 1);
    assert_eq!(svg.matches(r#"class="event""#).count(), events);
    assert!(svg.contains("plus-one-crossing at 0.625000"));
}

#[test]
fn diagram_to_unwritable_path_exits_one() {
    let o = run(&["diagram", "--out", "/nonexistent-dir/x.svg"]);
    assert_eq!(o.status.code(), Some(1));
}
