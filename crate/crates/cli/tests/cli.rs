use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const EX8: &str = "quiver example\nvertex a\nvertex b\narrow f: a -> b\narrow p: a -> a\narrow q: b -> b\n";

fn qgr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgr")).args(args).output().expect("qgr runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gk_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let ex = write(&dir, "ex.quiver", EX8);
    let o = qgr(&["gk", s(&ex)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("GK-dimension 2"));

    let sk = write(&dir, "sklyanin_uvw.alg", "gens u v w\nrel uv\nrel vw\nrel wu\n");
    let o = qgr(&["gk", s(&sk), "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["finite"], false);
    assert!(!v["doubly_cyclic"].as_array().unwrap().is_empty());

    assert_eq!(qgr(&["ext-quiver", s(&sk)]).status.code(), Some(3));
    assert_eq!(qgr(&["gk", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(qgr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qgr(&["gk", s(&ex), "--format", "dot"]).status.code(), Some(2));
}

#[test]
fn canonical_is_equivalent_to_its_input() {
    let dir = TempDir::new().unwrap();
    let q = write(
        &dir,
        "q.quiver",
        "vertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> a\narrow z: b -> c\narrow w: c -> c\n",
    );
    let o = qgr(&["canonical", s(&q)]);
    assert_eq!(o.status.code(), Some(0));
    let canon = write(&dir, "gamma_eq.quiver", &stdout(&o));
    let o = qgr(&["equiv", s(&q), s(&canon), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("equivalent"));

    let lp = write(&dir, "loop.quiver", "vertex a\narrow x: a -> a\n");
    let o = qgr(&["equiv", s(&q), s(&lp), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "inequivalent");
}

#[test]
fn k0_report_and_vectors() {
    let dir = TempDir::new().unwrap();
    let ex = write(&dir, "example8.quiver", EX8);
    let o = qgr(&["k0", s(&ex), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["poset"]["covers"], serde_json::json!([["a", "b"]]));
    assert_eq!(v["normalization"]["perm"], serde_json::json!(["a", "b"]));

    assert_eq!(qgr(&["k0", s(&ex), "--test-vector", "1,-5"]).status.code(), Some(0));
    assert_eq!(qgr(&["k0", s(&ex), "--test-vector", "0,-1"]).status.code(), Some(1));
    assert_eq!(qgr(&["k0", s(&ex), "--test-vector", "1,2,3"]).status.code(), Some(2));
    assert_eq!(qgr(&["cone-test", s(&ex), "--vector", "1,-100"]).status.code(), Some(0));
    assert_eq!(qgr(&["cone-test", s(&ex), "--vector", "-1,100"]).status.code(), Some(1));
    assert!(stdout(&qgr(&["k0", s(&ex), "--normalized"])).contains("N:"));
}

#[test]
fn json_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let ex = write(&dir, "ex.quiver", EX8);
    let a = stdout(&qgr(&["report", s(&ex)]));
    let b = stdout(&qgr(&["report", s(&ex)]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["growth"]["gk"], 2);
    assert_eq!(v["matricial"]["bratteli"][3], serde_json::json!([1, 4]));
    assert_eq!(v["k0"]["rank"], 2);
}

#[test]
fn quiver_formats_round_trip() {
    let dir = TempDir::new().unwrap();
    let xy = write(&dir, "xy.alg", "gens x y\nrel xy\n");
    let o = qgr(&["monomial", "graph", s(&xy), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let json = write(&dir, "graph.json", &stdout(&o));
    let o = qgr(&["gk", s(&json)]);
    assert!(stdout(&o).contains("GK-dimension 2"));
    let dot = stdout(&qgr(&["monomial", "graph", s(&xy), "--format", "dot"]));
    assert_eq!(dot.matches("->").count(), 3);
    let o = qgr(&["ext-quiver", s(&xy), "--poset"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["covers"], serde_json::json!([["y", "x"]]));
    let o = qgr(&["simples", s(&xy)]);
    assert!(stdout(&o).starts_with("2 simple objects"));
}

#[test]
fn points_and_extensions() {
    let dir = TempDir::new().unwrap();
    let ex = write(&dir, "ex.quiver", EX8);
    let o = qgr(&["hom", s(&ex), "--from", "a", "--to", "a", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["dim"].as_u64(), v["stabilized"].as_bool()), (Some(1), Some(true)));

    let o = qgr(&["ext-split", s(&ex), "--from", "a", "--to", "b"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "nonsplit"));
    let o = qgr(&["ext-split", s(&ex), "--from", "a", "--to", "b", "--nu", "1,0,0"]);
    assert!(stdout(&o).starts_with("split"));

    let o = qgr(&["point-classify", s(&ex), "--start", "a", "--prefix", "p,f"]);
    assert!(stdout(&o).contains("O_b"));
    let o = qgr(&["point", "classify", s(&ex), "--start", "a", "--prefix", "p,f", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertex"], "b");
    assert_eq!(v["entry_degree"], 2);
}

#[test]
fn gk_one_reports() {
    let dir = TempDir::new().unwrap();
    let c4 = write(
        &dir,
        "c4.quiver",
        "vertex a\nvertex b\nvertex c\nvertex d\narrow w: a -> b\narrow x: b -> c\narrow y: c -> d\narrow z: d -> a\n",
    );
    let o = qgr(&["noetherian", s(&c4)]);
    let out = stdout(&o);
    assert!(out.contains("left Noetherian: true") && out.contains("Mod k^4"));
    let o = qgr(&["bratteli", s(&c4), "--length", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bratteli"][2], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(v["endo_blocks"][2]["blocks"]["d"], 1);
}
