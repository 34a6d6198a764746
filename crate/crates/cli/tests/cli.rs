use std::fs;
use std::path::{Path, PathBuf};

use tempfile::TempDir;
use zbrng::io::{parse_hadamard, parse_lift, parse_ring, parse_smatrix};
use zbrng_cli::{run, CommandResult};

fn zb(args: &[&str]) -> CommandResult {
    run(std::iter::once("zbrng").chain(args.iter().copied()))
}

fn p(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn z3_ring(dir: &TempDir) -> PathBuf {
    let sm = p(dir, "z3.s");
    let ring = p(dir, "z3.zbrng");
    assert_eq!(zb(&["gen", "group", "3", "-o", s(&sm)]).code, 0);
    assert_eq!(zb(&["verlinde", s(&sm), "-o", s(&ring)]).code, 0);
    ring
}

#[test]
fn verify_z3_passes() {
    let dir = TempDir::new().unwrap();
    let ring = z3_ring(&dir);
    let r = zb(&["verify", s(&ring)]);
    assert_eq!(r.code, 0, "{}", r.report);
    assert_eq!(r.report.matches(": pass").count(), 6);
}

#[test]
fn had_ring_parity_on_paley11() {
    let dir = TempDir::new().unwrap();
    let had = p(&dir, "paley11.had");
    assert_eq!(zb(&["gen", "paley", "11", "-o", s(&had)]).code, 0);
    let r = zb(&["had", "ring", s(&had), "--check-parity"]);
    assert_eq!(r.code, 0);
    assert!(r.report.contains("parity: holds"));
    let ring = parse_ring(&r.report).unwrap();
    assert_eq!(ring.n, 12);
}

#[test]
fn smatrix_of_non_associative_tensor_fails() {
    let dir = TempDir::new().unwrap();
    let f = p(&dir, "bad.zbrng");
    fs::write(&f, "zbrng 1\nn 2\ninvolution 0 1\nN 0\n0 1\n0 1\nN 1\n0 1\n1 0\n").unwrap();
    let r = zb(&["smatrix", s(&f)]);
    assert_eq!(r.code, 1, "{}", r.report);
    assert!(r.report.contains("not associative at"));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let f = p(&dir, "junk.zbrng");
    fs::write(&f, "zbrng 1\nn two\n").unwrap();
    assert_eq!(zb(&["verify", s(&f)]).code, 2);
    assert_eq!(zb(&["verify", s(&p(&dir, "missing"))]).code, 2);
    assert_eq!(zb(&["frobnicate"]).code, 2);
    assert_eq!(zb(&["gen", "paley", "13"]).code, 2);
}

#[test]
fn smatrix_round_trip() {
    let dir = TempDir::new().unwrap();
    let ring = z3_ring(&dir);
    let out = p(&dir, "back.s");
    assert_eq!(zb(&["smatrix", s(&ring), "-o", s(&out)]).code, 0);
    let sm = parse_smatrix(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(sm.n(), 3);
    let back = p(&dir, "back.zbrng");
    assert_eq!(zb(&["verlinde", s(&out), "-o", s(&back)]).code, 0);
    assert_eq!(
        parse_ring(&fs::read_to_string(&back).unwrap()).unwrap().tensor,
        parse_ring(&fs::read_to_string(&ring).unwrap()).unwrap().tensor
    );
}

#[test]
fn hadamard_reconstruct_round_trip() {
    let dir = TempDir::new().unwrap();
    let had = p(&dir, "s16.had");
    let ring = p(&dir, "s16.zbrng");
    assert_eq!(zb(&["gen", "sylvester", "4", "-o", s(&had)]).code, 0);
    assert_eq!(zb(&["had", "ring", s(&had), "-o", s(&ring)]).code, 0);
    let mut want = parse_hadamard(&fs::read_to_string(&had).unwrap()).unwrap();
    want.sort();
    for cmd in ["reconstruct", "reconstruct3"] {
        let r = zb(&["had", cmd, s(&ring)]);
        assert_eq!(r.code, 0, "{}", r.report);
        let mut got = parse_hadamard(&r.report).unwrap();
        got.sort();
        assert_eq!(got, want, "{cmd}");
    }
}

#[test]
fn quotient2_of_z2_x_z3() {
    let dir = TempDir::new().unwrap();
    let sm = p(&dir, "g.s");
    let ring = p(&dir, "g.zbrng");
    assert_eq!(zb(&["gen", "group", "2", "3", "-o", s(&sm)]).code, 0);
    assert_eq!(zb(&["verlinde", s(&sm), "-o", s(&ring)]).code, 0);
    let r = zb(&["quotient2", s(&ring), "--element", "3"]);
    assert_eq!(r.code, 0, "{}", r.report);
    let q = parse_ring(&r.report).unwrap();
    let z3 = parse_ring(&fs::read_to_string(z3_ring(&dir)).unwrap()).unwrap();
    assert_eq!(q.tensor, z3.tensor);
    assert_eq!(zb(&["quotient2", s(&ring), "--element", "1"]).code, 1);
}

#[test]
fn lift_output_parses() {
    let dir = TempDir::new().unwrap();
    let had = p(&dir, "p3.had");
    assert_eq!(zb(&["gen", "paley", "3", "-o", s(&had)]).code, 0);
    let r = zb(&["lift", "--hadamard", s(&had)]);
    assert_eq!(r.code, 0, "{}", r.report);
    let lift = parse_lift(&r.report).unwrap();
    assert_eq!(lift.m, 4);
    assert!(lift.tensor.iter().all(|&(_, _, _, c)| c >= 0));
}

#[test]
fn closed_and_subring() {
    let dir = TempDir::new().unwrap();
    let sm = p(&dir, "z4.s");
    assert_eq!(zb(&["gen", "group", "4", "-o", s(&sm)]).code, 0);
    let r = zb(&["closed", s(&sm), "--machine"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.report).unwrap();
    assert_eq!(v["data"]["closed"], serde_json::json!([[0], [0, 1, 2, 3], [0, 2]]));
    let sub = zb(&["subring", s(&sm), "--set", "0,2"]);
    assert_eq!(sub.code, 0);
    assert_eq!(parse_smatrix(&sub.report).unwrap().n(), 2);
    assert_eq!(zb(&["subring", s(&sm), "--set", "0,1"]).code, 1);
}

#[test]
fn had_tools() {
    let dir = TempDir::new().unwrap();
    let had = p(&dir, "p11.had");
    assert_eq!(zb(&["gen", "paley", "11", "-o", s(&had)]).code, 0);
    let w = zb(&["had", "wmatrix", s(&had), "--index", "1"]);
    assert_eq!(w.code, 0);
    assert_eq!(parse_hadamard(&w.report).unwrap().len(), 20);
    let closed = zb(&["had", "closed", s(&had)]);
    assert_eq!(closed.report.matches("closed {").count(), 13);
    assert_eq!(zb(&["had", "census", s(&had)]).code, 0);
    assert!(zb(&["had", "vrank", s(&had)]).report.contains("bound 10"));
    assert!(zb(&["had", "equiv", s(&had), s(&had)]).report.contains("indistinguishable"));
    assert_eq!(zb(&["had", "f2", "--k", "5"]).code, 0);
}

#[test]
fn output_is_deterministic() {
    let a = zb(&["gen", "kp", "3"]);
    let b = zb(&["gen", "kp", "3", "--seed", "7"]);
    assert_eq!(a, b);
    let ext = zb(&["gen", "ext2", "2", "2"]);
    assert_eq!(parse_smatrix(&ext.report).unwrap().n(), 6);
    assert_eq!(zb(&["gen", "ds3"]).code, 0);
}
