use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const PSI: &str = include_str!("../../core/fixtures/psi.bdd");
const PSI_POLY: &str = "1 8 30 70 113 132 113 70 30 8 1";

fn bddk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bddk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn count_psi() {
    let dir = TempDir::new().unwrap();
    let psi = write(&dir, "psi.bdd", PSI);
    let out = bddk(&["count", s(&psi)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "models=576\n");
    let out = bddk(&["count", s(&psi), "--per-cardinality"]);
    assert_eq!(stdout(&out), format!("models=576\n{PSI_POLY}\n"));
}

#[test]
fn enumerate_rows() {
    let dir = TempDir::new().unwrap();
    let psi = write(&dir, "psi.bdd", PSI);
    let out = bddk(&["enumerate", s(&psi), "-k", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k=4 rows=16 models=113"));
    assert!(text.contains("0 1 0 a a a 0 b b b ; a=g(1) b=g(2) # count=9"));
    assert_eq!(lines.count(), 16);

    let out = bddk(&["enumerate", s(&psi), "-k", "4", "--method", "1"]);
    assert!(stdout(&out).starts_with("k=4 rows=4 models=113\n"));
}

#[test]
fn bits_identical_across_methods() {
    let dir = TempDir::new().unwrap();
    let psi = write(&dir, "psi.bdd", PSI);
    for k in ["0", "4", "8", "10"] {
        let outputs: Vec<String> = ["1", "2", "3"]
            .iter()
            .map(|m| {
                let out = bddk(&["enumerate", s(&psi), "-k", k, "--method", m, "--format", "bits"]);
                assert!(out.status.success());
                stdout(&out)
            })
            .collect();
        assert_eq!(outputs[0], outputs[1], "k={k}");
        assert_eq!(outputs[1], outputs[2], "k={k}");
    }
    let out = bddk(&["enumerate", s(&psi), "-k", "4", "--format", "bits"]);
    let text = stdout(&out);
    assert!(text.starts_with("k=4 models=113\n"));
    assert_eq!(text.lines().count(), 114);
    assert!(text.lines().skip(1).all(|l| l.len() == 10 && l.matches('1').count() == 4));
}

#[test]
fn enumerate_rejects_bad_requests() {
    let dir = TempDir::new().unwrap();
    let psi = write(&dir, "psi.bdd", PSI);
    let out = bddk(&["enumerate", s(&psi), "-k", "4", "--method", "2"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("--format bits"));
    let out = bddk(&["enumerate", s(&psi), "-k", "11"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("out of range"));
    let out = bddk(&["enumerate", s(&psi), "-k", "2", "--method", "4"]);
    assert!(!out.status.success());
}

#[test]
fn parse_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.bdd", &PSI.replace("node e 3 a b", "node e 8 a b"));
    let out = bddk(&["count", s(&bad)]);
    assert!(!out.status.success());
    let err = stderr(&out);
    assert!(err.starts_with("error:"), "{err}");
    assert!(err.contains("line 8"), "{err}");
    let out = bddk(&["count", s(&dir.path().join("missing.bdd"))]);
    assert!(!out.status.success());
}

#[test]
fn stats_reports_schedule() {
    let dir = TempDir::new().unwrap();
    let psi = write(&dir, "psi.bdd", PSI);
    let out = bddk(&["stats", s(&psi), "-k", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("n=10 s=6 root=f\n"));
    assert!(text.contains("k=4 models=113"));
    assert!(text.contains("card1(d)=[0,7] card2(d)=[1,3]"));
    assert!(text.contains("card1(c)=[2,4] card2(c)=[2,2]"));
    assert!(text.contains("card2(f)=[4,4]"));
}

#[test]
fn check_passes_and_catches_mutation() {
    let dir = TempDir::new().unwrap();
    let psi = write(&dir, "psi.bdd", PSI);
    let out = bddk(&["check", s(&psi), "--expect-models", "576", "--expect-poly", PSI_POLY]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("94 checks, 0 failed\n"));

    let swapped = write(&dir, "swapped.bdd", &PSI.replace("node e 3 a b", "node e 3 b a"));
    let out = bddk(&["check", s(&swapped), "--expect-models", "576", "--expect-poly", PSI_POLY]);
    assert!(!out.status.success());
    let text = stdout(&out);
    assert!(text.contains("FAIL per-weight counts vs expected"), "{text}");
    assert!(text.ends_with("94 checks, 1 failed\n"));
}

#[test]
fn cnf_conversion() {
    let dir = TempDir::new().unwrap();
    let cnf = write(&dir, "f.cnf", "c two clauses\np cnf 3 2\n1 2 0\n-1 3 0\n");
    let bdd = dir.path().join("f.bdd");
    let out = bddk(&["from-cnf", s(&cnf), "-o", s(&bdd)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = bddk(&["count", s(&bdd), "--per-cardinality"]);
    assert_eq!(stdout(&out), "models=4\n0 1 2 1\n");
    let out = bddk(&["check", s(&bdd)]);
    assert!(out.status.success());
}

#[test]
fn random_generation_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.bdd");
    let b = dir.path().join("b.bdd");
    for path in [&a, &b] {
        let out = bddk(&["gen-random", "-n", "12", "--nodes", "30", "--seed", "7", "-o", s(path)]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read_to_string(&a).unwrap(), fs::read_to_string(&b).unwrap());
    let out = bddk(&["check", s(&a), "--kmax", "6"]);
    assert!(out.status.success(), "{}", stdout(&out));
}
