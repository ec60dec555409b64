use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

const C: &str = "ribbon v1\nedge a +\nedge b +\nvertex u: a.1 b.1\nvertex w: a.2 b.2\n";
const D: &str = "ribbon v1\nedge a +\nedge b -\nvertex u: a.1 b.1\nvertex w: a.2 b.2\n";
const T1: &str = "ribbon v1\nedge a +\nedge b +\nvertex v: a.1 b.1 a.2 b.2\n";
const N1: &str = "ribbon v1\nedge a -\nedge b -\nvertex v: a.1 b.1 a.2 b.2\n";

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn ribbon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbon")).args(args).output().unwrap()
}

fn ribbon_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ribbon"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn info_names_the_surface() {
    let f = Files::new();
    let d = f.put("d.rg", D);
    let o = ribbon(&["info", path(&d)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("γ=1 non-orientable RP²"));
}

#[test]
fn partial_dual_of_plane_cycle_is_toroidal() {
    let f = Files::new();
    let c = f.put("c.rg", C);
    let dual = ribbon(&["dual", "--edges", "a", path(&c)]);
    assert_eq!(dual.status.code(), Some(0));
    let info = ribbon_stdin(&["info", "-"], &stdout(&dual));
    assert!(stdout(&info).starts_with("γ=2 orientable torus"), "{}", stdout(&info));
    let unknown = ribbon(&["dual", "--edges", "z", path(&c)]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn spectrum_table() {
    let f = Files::new();
    let n1 = f.put("n1.rg", N1);
    let o = ribbon(&["spectrum", path(&n1)]);
    assert_eq!(stdout(&o), "{}\t1\n{a}\t2\n{b}\t2\n{a,b}\t1\n");
    let only = ribbon(&["spectrum", "--genus", "2", path(&n1)]);
    assert_eq!(stdout(&only), "{a}\t2\n{b}\t2\n");
    let json: Value = serde_json::from_slice(&ribbon(&["spectrum", path(&n1), "--json"]).stdout).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["subset"], serde_json::json!(["a"]));
    assert_eq!(rows[1]["euler_genus"], 2);
}

#[test]
fn relate_reports_partial_dual_subsets() {
    let f = Files::new();
    let t1 = f.put("t1.rg", T1);
    let c = f.put("c.rg", C);
    let d = f.put("d.rg", D);
    let o = ribbon(&["relate", path(&t1), path(&c)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("equivalent: no"));
    assert!(out.contains("partial duals: {a} {b}"), "{out}");
    let unrelated = ribbon(&["relate", path(&c), path(&d)]);
    assert_eq!(unrelated.status.code(), Some(1));
    let same = ribbon(&["relate", path(&c), path(&c)]);
    assert!(stdout(&same).contains("equivalent: yes"));
    assert!(stdout(&same).contains("moves: 0"));
}

#[test]
fn relate_finds_moves_between_plane_partial_duals() {
    let f = Files::new();
    let bouquet = f.put("b.rg", "ribbon v1\nedge a +\nedge b +\nvertex v: a.1 a.2 b.1 b.2\n");
    let dual = ribbon(&["dual", "--edges", "a", path(&bouquet)]);
    let target = f.put("t.rg", &stdout(&dual));
    let o = ribbon(&["relate", path(&bouquet), path(&target)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("moves: 1"), "{}", stdout(&o));
}

#[test]
fn biseparations_factor_and_canon() {
    let f = Files::new();
    let t1 = f.put("t1.rg", T1);
    let o = ribbon(&["biseparations", "--class", "plane", path(&t1)]);
    assert_eq!(stdout(&o), "{a}\tplane\n{b}\tplane\n");
    let fac = ribbon(&["factor", path(&t1)]);
    assert!(stdout(&fac).starts_with("{a,b}\tγ=2 torus"));
    let mirrored = f.put("m.rg", "ribbon v1\nedge x +\nedge y +\nvertex p: y.2 x.2\nvertex q: y.1 x.1\n");
    let c = f.put("c.rg", C);
    assert_eq!(stdout(&ribbon(&["canon", path(&c)])), stdout(&ribbon(&["canon", path(&mirrored)])));
}

#[test]
fn errors_use_exit_code_two() {
    let f = Files::new();
    let bad = f.put("bad.rg", "ribbon v1\nedge a *\n");
    let o = ribbon(&["info", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 8"), "{}", stderr(&o));
    let missing = f.put("missing.rg", "ribbon v1\nedge a +\nvertex v: a.1\n");
    let o = ribbon(&["info", path(&missing)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing end a.2"));
    assert_eq!(ribbon(&["info", "/nonexistent/file.rg"]).status.code(), Some(2));
    assert_eq!(ribbon(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ribbon(&["verify", "--suite", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn json_documents_round_trip() {
    let f = Files::new();
    let c = f.put("c.rg", C);
    let o = ribbon(&["--json", "dual", path(&c)]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["command"], "dual");
    let graph = f.put("dual.json", &doc["graph"].to_string());
    let text = ribbon(&["dual", path(&c)]);
    let again = ribbon(&["dual", path(&graph)]);
    let empty = ribbon(&["dual", "-"]);
    assert_eq!(empty.status.code(), Some(2));
    let back = ribbon_stdin(&["dual", "-"], &stdout(&text));
    assert_eq!(stdout(&ribbon(&["canon", path(&c)])), stdout(&ribbon_stdin(&["canon", "-"], &stdout(&back))));
    assert_eq!(again.status.code(), Some(0));
    for cmd in ["info", "spectrum", "biseparations", "factor", "canon"] {
        let o = ribbon(&["--json", cmd, path(&c)]);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["command"], cmd);
    }
}

#[test]
fn verify_is_deterministic_when_stable() {
    let args = ["verify", "--max-edges", "2", "--stable"];
    let first = ribbon(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert_eq!(first.stdout, ribbon(&args).stdout);
    assert!(stdout(&first).contains("PASS genus-oracle"));
    let json = ribbon(&["--json", "verify", "--max-edges", "2", "--stable", "--suite", "sum-euler,rerooting"]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["report"]["checks"].as_array().unwrap().len(), 2);
    assert!(v["report"]["checks"][0].get("elapsed_ms").is_none());
}
