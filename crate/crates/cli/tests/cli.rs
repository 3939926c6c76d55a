use std::process::{Command, Output};

use serde_json::Value;
use systolic::scalar::Scalar;
use systolic::surd::Surd;

fn sys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_systolic")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--emit", "json"];
    a.extend_from_slice(args);
    let out = sys(&a);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("systolic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).display().to_string()
}

fn s(v: &Value) -> &str {
    v.as_str().unwrap()
}

#[test]
fn ratio_table_rows() {
    let v = json(&["ratio-table"]);
    let rows = v["ratio"].as_array().unwrap();
    let k88 = &rows[0];
    assert_eq!(k88["genus"], 65);
    assert_eq!(k88["girth"], 4);
    assert_eq!(s(&k88["area"]), "384/1");
    assert_eq!(s(&k88["systole"]), "4/1");
    assert_eq!(s(&k88["sr"]), "1/24");
    assert_eq!(s(&rows[1]["sr"]), "1/6");
    let hex: Surd = s(&rows[2]["sr"]).parse().unwrap();
    assert!((hex.to_f64() - 2.0 / 3f64.sqrt()).abs() < 1e-12);
    for r in rows {
        // sr is recomputed from the exact systole and area columns.
        let sy: Surd = s(&r["systole"]).parse().unwrap();
        let area: Surd = s(&r["area"]).parse().unwrap();
        let sr: Surd = s(&r["sr"]).parse().unwrap();
        assert_eq!(&sr * &area, sy.square());
        assert_eq!(sr.to_string(), s(&r["sr"]));
    }
}

#[test]
fn build_then_certify() {
    let x = tmp("x.surf");
    assert!(sys(&["build", "example-x", "--l", "2", "--out", &x]).status.success());
    let t = json(&["topology", &x]);
    assert_eq!(t["topology"][0]["genus"], 2);
    assert_eq!(s(&t["topology"][0]["area"]).parse::<Scalar>().unwrap(), Scalar::int(6));
    let sy = json(&["systole", &x, "--bound-sq", "4"]);
    assert_eq!(s(&sy["systole"][0]["length"]), "1/1");
    let csv = String::from_utf8(sys(&["sys-h", &x, "--bound-sq", "4"]).stdout).unwrap();
    assert!(csv.starts_with("length,length_sq,"));
}

#[test]
fn graph_generation_round_trip() {
    let g = tmp("g.graph");
    assert!(sys(&["--seed", "4", "graph", "gen", "--k", "3", "--girth", "6", "--out", &g]).status.success());
    let v = json(&["graph", "girth", &g]);
    assert_eq!(v["graph"][0]["k"], 3);
    assert!(v["graph"][0]["girth"].as_u64().unwrap() >= 6);
}

#[test]
fn hyper_run_reports_basis() {
    for (m, k) in [(1, 2), (2, 3)] {
        let (surf, inv) = (tmp(&format!("h{m}.surf")), tmp(&format!("h{m}.inv")));
        let m = m.to_string();
        assert!(sys(&["build", "hyperelliptic", "--m", &m, "--out", &surf, "--involution", &inv]).status.success());
        let v = json(&["hyper", "run", "--surface", &surf, "--involution", &inv, "--iff-trials", "5"]);
        assert_eq!(v["basis"].as_array().unwrap().len(), k);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
        for e in v["events"].as_array().unwrap() {
            let r: Surd = s(&e["radius"]).parse().unwrap();
            assert_eq!(r.to_string(), s(&e["radius"]));
        }
    }
}

#[test]
fn exit_codes() {
    let surf = tmp("e.surf");
    assert!(sys(&["build", "hyperelliptic", "--m", "1", "--out", &surf]).status.success());
    let bad = tmp("identity.inv");
    std::fs::write(&bad, "involution v1\nmap 0 0 1 1 0 0\n").unwrap();
    assert_eq!(sys(&["hyper", "run", "--surface", &surf, "--involution", &bad]).status.code(), Some(3));
    assert_eq!(sys(&["systole", "/nonexistent/file", "--bound-sq", "1"]).status.code(), Some(3));
    assert_eq!(sys(&["lemma27", "--x-min", "5"]).status.code(), Some(3));
    assert_eq!(sys(&["lemma27", "--x-min", "6", "--x-max", "8", "--samples", "4"]).status.code(), Some(0));
}
