use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_noninner"))
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.pc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn analyze_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("w81xc3.json");
    let file = corpus("w81xc3");
    let o = run(&["analyze", file.to_str().unwrap(), "--json", cert.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("criterion: Lem4.2"));

    let o = run(&["verify", file.to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verified: Lem4.2"));
}

#[test]
fn verify_rejects_a_certificate_for_another_group() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("d8.json");
    assert!(run(&["analyze", corpus("d8").to_str().unwrap(), "--json", cert.to_str().unwrap()]).status.success());
    let o = run(&["verify", corpus("q16").to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("group_id"), "{}", stderr(&o));
}

#[test]
fn verify_names_a_tampered_field() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("f3c3.json");
    let file = corpus("f3c3");
    assert!(run(&["analyze", file.to_str().unwrap(), "--json", cert.to_str().unwrap()]).status.success());
    let mut json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    json["profile"]["d"] = serde_json::Value::from(3);
    std::fs::write(&cert, serde_json::to_string_pretty(&json).unwrap()).unwrap();
    let o = run(&["verify", file.to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("profile.d"), "{}", stderr(&o));
}

#[test]
fn order_cap_exits_with_two() {
    let o = run(&["analyze", corpus("f5c3").to_str().unwrap(), "--max-order", "1000"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.pc");
    std::fs::write(&file, "p=3; n=2; [g1,g2]=g1").unwrap();
    let o = run(&["analyze", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_compare_reports_equality() {
    let o = run(&["oracle-compare", corpus("w81").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    for label in ["A_1", "A_2", "A_3", "A"] {
        assert!(out.contains(&format!("C = {label}: EQUAL")), "{out}");
    }
}

#[test]
fn identities_and_derivations() {
    let o = run(&["identities", corpus("f3c3").to_str().unwrap(), "--samples", "2000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("sampled"));

    let o = run(&["identities", corpus("d8").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["derivations", corpus("f3c3").to_str().unwrap(), "--level", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("level 2:"));
}

#[test]
fn corpus_run_with_filter() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["corpus", "run", "--filter", "16", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    for name in ["d16", "q16", "sd16", "d16xc2xc2"] {
        assert!(dir.path().join(format!("{name}.json")).exists());
    }
    let o = run(&["corpus", "run", "--filter", "nothing-matches", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["corpus", "list"]);
    assert_eq!(stdout(&o).lines().count(), 13);
}
