use std::path::PathBuf;
use std::process::{Command, Output};

use lawrence_cli::{exit, run, Command as Cmd, GraphKind, RunConfig};
use lawrence_core::io::from_json;
use lawrence_core::Convention;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn lawrence(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lawrence"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn resolve_writes_schema_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = lawrence(&[
        "resolve",
        data("sum_zero3.txt").to_str().unwrap(),
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), exit::OK, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["ranks"], serde_json::json!([1, 3, 2]));
    assert_eq!(v["n"], 3);
    assert_eq!(v["m"], 2);
    let cell = &v["cells"][1];
    for key in ["dim", "label_x", "label_y", "id"] {
        assert!(cell.get(key).is_some(), "missing {key}");
    }
    let entry = &v["boundary"][0];
    for key in ["degree", "row", "col", "terms"] {
        assert!(entry.get(key).is_some(), "missing {key}");
    }
    let c = from_json(&text).unwrap();
    assert_eq!(c.ranks(), vec![1, 3, 2]);
    assert!(c.check_d_squared());
}

#[test]
fn kernel_and_matrix_inputs_agree() {
    let a = lawrence(&["generators", data("sum_zero3.txt").to_str().unwrap()]);
    let b = lawrence(&["generators", data("sum_zero3_ker.txt").to_str().unwrap()]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 3);
}

#[test]
fn not_unimodular_exit_code() {
    let o = lawrence(&["check", data("two.txt").to_str().unwrap()]);
    assert_eq!(code(&o), exit::NOT_UNIMODULAR);
    assert!(String::from_utf8_lossy(&o.stdout).contains("is 2"));
    let o = lawrence(&["resolve", data("two.txt").to_str().unwrap()]);
    assert_eq!(code(&o), exit::NOT_UNIMODULAR);
}

#[test]
fn error_exit_codes_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2 1\n1\nfoo\n").unwrap();
    assert_eq!(
        code(&lawrence(&["resolve", bad.to_str().unwrap()])),
        exit::PARSE
    );
    assert_eq!(code(&lawrence(&["resolve", "/no/such/file"])), exit::IO);
    assert_eq!(code(&lawrence(&["kd", "--d", "8"])), exit::CAP_EXCEEDED);
    let o = lawrence(&[
        "initial",
        data("sum_zero3.txt").to_str().unwrap(),
        "--weight",
        "1,1,0,0,0,0",
    ]);
    assert_eq!(code(&o), exit::NON_GENERIC);
    assert_eq!(code(&lawrence(&["frobnicate"])), exit::USAGE);
    let o = lawrence(&[
        "resolve",
        data("k4.graph").to_str().unwrap(),
        "--max-covectors",
        "10",
    ]);
    assert_eq!(code(&o), exit::CAP_EXCEEDED);
}

#[test]
fn kd_five() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kd.json");
    let o = lawrence(&["kd", "--d", "5", "-q", "--json", out.to_str().unwrap()]);
    assert_eq!(code(&o), exit::OK);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["ranks"], serde_json::json!([1, 15, 50, 60, 24]));
}

#[test]
fn graph_commands() {
    let o = lawrence(&["graph", data("k4.graph").to_str().unwrap(), "--cographic"]);
    assert_eq!(code(&o), exit::OK);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(
        text.contains("7 combinatorial circuits, 7 lattice circuits: agree"),
        "{text}"
    );
    let o = lawrence(&[
        "graph",
        data("k5.graph").to_str().unwrap(),
        "--graphic",
        "-q",
    ]);
    assert_eq!(code(&o), exit::OK);
    assert_eq!(
        code(&lawrence(&["graph", data("k4.graph").to_str().unwrap()])),
        exit::USAGE
    );
}

#[test]
fn fiber_and_initial() {
    let o = lawrence(&[
        "fiber",
        data("sum_zero3.txt").to_str().unwrap(),
        "--degree",
        "2,1,1/1,1,1",
    ]);
    assert_eq!(code(&o), exit::OK);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("fiber of size 8"));
    assert!(text.contains("f-vector: [8, 14, 7]"));
    let o = lawrence(&[
        "initial",
        data("sum_zero3.txt").to_str().unwrap(),
        "--weight",
        "2,1,0,0,0,0",
    ]);
    assert_eq!(code(&o), exit::OK);
    assert!(String::from_utf8_lossy(&o.stdout).contains("ranks: 1 3 2"));
}

#[test]
fn verify_suite() {
    let o = lawrence(&["verify", data("k4.graph").to_str().unwrap(), "--cographic"]);
    assert_eq!(code(&o), exit::OK, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(!String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn library_entry_point_and_convention() {
    let mut cfg = RunConfig::new(Cmd::Resolve);
    cfg.input = Some(data("k4.graph"));
    cfg.graph_kind = GraphKind::Graphic;
    let ring = run(&cfg).unwrap();
    assert_eq!(ring.code, exit::OK);
    assert_eq!(ring.json["ranks"], serde_json::json!([1, 7, 12, 6]));
    cfg.convention = Convention::Ideal;
    let ideal = run(&cfg).unwrap();
    assert_eq!(ideal.json["ranks"], serde_json::json!([7, 12, 6]));
    // output is deterministic
    assert_eq!(run(&cfg).unwrap().json, ideal.json);
}
