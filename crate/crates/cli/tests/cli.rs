use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(format!("{name}.tap"))
}

fn tap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tap")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let p1 = fixture("plane_v1");
    let p2 = fixture("plane_v2");
    let cyl = fixture("cylinder");
    assert_eq!(tap(&["check", path(&p1), path(&p2)]).status.code(), Some(0));
    assert_eq!(tap(&["check", path(&p1), path(&cyl)]).status.code(), Some(1));
    let missing = tap(&["check", "/nonexistent.tap", path(&p1)]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!missing.stderr.is_empty());
}

#[test]
fn check_json() {
    let a = fixture("loch_ness");
    let b = fixture("jacobs_ladder");
    let out = tap(&["check", path(&a), path(&b), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["homeomorphic"], false);
    assert_eq!(v["left"]["reduced_code"], "sinf(oh())");
    assert_eq!(v["right"]["orientability"], "nonorientable");
    assert_eq!(v["right"]["genus_or_crosscaps"], "infinite");
}

#[test]
fn invariants_json() {
    let out = tap(&["invariants", path(&fixture("closed_genus2")), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["genus_or_crosscaps"], 2);
    assert_eq!(v["compact"], true);
    assert_eq!(v["planar"], false);
}

#[test]
fn unfold_cap_is_an_error() {
    let out = tap(&["--max-unfold", "1", "invariants", path(&fixture("cylinder"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduce_writes_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = tap(&[
        "reduce",
        path(&fixture("cantor_tree")),
        "--dot",
        dir.path().to_str().unwrap(),
        "--trace",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "s0(t())");
    for f in ["graph", "propagated", "unfolded", "admissible", "reduced"] {
        let text = std::fs::read_to_string(dir.path().join(format!("{f}.dot"))).unwrap();
        assert!(text.starts_with("digraph"), "{f}");
    }
}

#[test]
fn develop_cantor() {
    let out = tap(&["develop", path(&fixture("cantor_tree")), "-s", "70", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // 2^70 does not fit in a u64, so counts are strings
    assert_eq!(v["boundary_count"], "1180591620717411303424");
    assert_eq!(v["stage"], 70);
}

#[test]
fn appendix_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tap");
    let b = dir.path().join("b.tap");
    assert!(tap(&["gen", "appendix", "--bits", "0110", "-o", path(&a)]).status.success());
    assert!(tap(&["gen", "appendix", "--bits", "0111", "-o", path(&b)]).status.success());
    assert_eq!(tap(&["check", path(&a), path(&a)]).status.code(), Some(0));
    assert_eq!(tap(&["check", path(&a), path(&b)]).status.code(), Some(1));
    let bad = tap(&["gen", "appendix", "--bits", "01x", "-o", path(&a)]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn oracles() {
    let out = tap(&["oracle", "cb", path(&fixture("cylinder"))]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("rank"));
    let out = tap(&[
        "oracle",
        "confluence",
        path(&fixture("mixed_ends")),
        "--trials",
        "25",
        "--seed",
        "9",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).trim_end().ends_with("confluent"));
}
