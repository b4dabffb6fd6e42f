use std::path::PathBuf;
use std::process::{Command, Output};

use fanpart_cli::{compute, run_example, to_json, JsonCertificate, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn fanpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanpart")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("fanpart-{}-{name}", std::process::id()))
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&fanpart(&[])), EXIT_USAGE);
    assert_eq!(code(&fanpart(&["compute", "--a", "0", "--b", "2"])), EXIT_USAGE);
    assert_eq!(code(&fanpart(&["compute", "--a", "1", "--b", "1"])), EXIT_USAGE);
    assert_eq!(code(&fanpart(&["compute", "--a", "x", "--b", "2"])), EXIT_USAGE);
    assert_eq!(code(&fanpart(&["example", "z5"])), EXIT_USAGE);
    assert_eq!(code(&fanpart(&["--help"])), EXIT_OK);
}

#[test]
fn examples() {
    let o = fanpart(&["example", "z8"]);
    assert_eq!(code(&o), EXIT_OK);
    assert!(String::from_utf8_lossy(&o.stdout).contains("MATCHES PAPER"));
    let o = fanpart(&["example", "z4"]);
    assert_eq!(code(&o), EXIT_MISMATCH);
    assert!(String::from_utf8_lossy(&o.stdout).contains("DIFFERS FROM PAPER"));
    assert_eq!(run_example("z8").unwrap().rank, 2);
    assert!(run_example("nope").is_none());
}

#[test]
fn compute_writes_a_deterministic_certificate() {
    let (p1, p2) = (tmp("c1.json"), tmp("c2.json"));
    for p in [&p1, &p2] {
        let o = fanpart(&["compute", "--a", "1", "--b", "2", "--json", p.to_str().unwrap()]);
        // the class vanishes, so the run reports a mismatch
        assert_eq!(code(&o), EXIT_MISMATCH);
        let out = String::from_utf8_lossy(&o.stdout);
        assert!(out.contains("Step 8."));
        assert!(out.contains("coinvariants Z2 (+) Z"));
    }
    let read = |p: &PathBuf| -> JsonCertificate { serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap() };
    let (mut c1, mut c2) = (read(&p1), read(&p2));
    c1.timing.elapsed_ms = 0;
    c2.timing.elapsed_ms = 0;
    assert_eq!(c1, c2);
    let _ = std::fs::remove_file(p1);
    let _ = std::fs::remove_file(p2);
}

#[test]
fn certificate_round_trip() {
    let c = compute(1, 3).unwrap();
    let back: JsonCertificate = serde_json::from_str(&to_json(&c)).unwrap();
    assert_eq!(back, c);
    let v: serde_json::Value = serde_json::from_str(&to_json(&c)).unwrap();
    assert_eq!(v["params"]["n"], 8);
    assert_eq!(v["tool"], "fanpart");
}

#[test]
fn selftest_detects_an_injected_sign_fault() {
    let o = fanpart(&["selftest"]);
    assert_eq!(code(&o), EXIT_OK, "{}", String::from_utf8_lossy(&o.stdout));
    let o = fanpart(&["selftest", "--inject-sign-fault"]);
    assert_ne!(code(&o), EXIT_OK);
    assert!(String::from_utf8_lossy(&o.stdout).contains("[FAIL] representation check, Z8 fixture"));
}
