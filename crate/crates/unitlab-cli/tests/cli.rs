//! End-to-end tests of the binary: exit codes, output fragments, the JSON
//! schema round-trip, the env-var cap, and the fault-injection negative
//! control.

use std::process::{Command, Output};

fn unitlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitlab"))
        .args(args)
        .env_remove("UNITLAB_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn compute_modular_c32() {
    let out = unitlab(&["compute", "--group", "32", "--p", "2", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("C_32 × C_16 × C_8^2 × C_4^4 × C_2^8 × C_1"), "{s}");
    assert!(s.contains("|U(FG)| = 2147483648"), "{s}");
}

#[test]
fn compute_semisimple_elementary_abelian() {
    let out = unitlab(&["compute", "--group", "2^5", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("C_{q-1}^32"), "{s}");
    assert!(s.contains("C_2^32"), "{s}");
}

#[test]
fn compute_trivial_group() {
    let out = unitlab(&["compute", "--group", "1", "--p", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("C_4"));
}

#[test]
fn compute_accepts_q_form() {
    let out = unitlab(&["compute", "--group", "16,2", "--q", "9"]);
    assert_eq!(code(&out), 0);
    // q = 9 ≡ 9 (mod 16): C_{q-1}^16 x C_{q^2-1}^8
    let s = stdout(&out);
    assert!(s.contains("C_{q^2-1}^8 × C_{q-1}^16"), "{s}");
}

#[test]
fn invalid_inputs_exit_2() {
    assert_eq!(code(&unitlab(&["compute", "--group", "abc", "--p", "2"])), 2);
    assert_eq!(code(&unitlab(&["compute", "--group", "32", "--q", "12"])), 2);
    assert_eq!(code(&unitlab(&["compute", "--group", "32", "--p", "9"])), 2);
    // clap-level conflicts and missing flags also exit 2
    assert_eq!(code(&unitlab(&["compute", "--group", "32", "--p", "2", "--q", "3"])), 2);
    assert_eq!(code(&unitlab(&["compute", "--group", "32"])), 2);
    assert_eq!(code(&unitlab(&["symbolic", "--group", "32", "--q-mod", "nonsense"])), 2);
    // capacity: the oracle cannot enumerate GF(2)^(C_32)
    assert_eq!(code(&unitlab(&["oracle", "--group", "32", "--p", "2"])), 2);
}

#[test]
fn symbolic_residue_class() {
    let out = unitlab(&["symbolic", "--group", "32", "--q-mod", "3:32"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("F-conjugacy classes: 9"), "{s}");
    assert!(
        s.contains("C_{q^8-1}^2 × C_{q^4-1}^2 × C_{q^2-1}^3 × C_{q-1}^2"),
        "{s}"
    );
    assert!(s.contains("T = {1, 3, 9, 11, 17, 19, 25, 27}"), "{s}");
    // modulus must determine the class
    assert_eq!(code(&unitlab(&["symbolic", "--group", "32", "--q-mod", "3:16"])), 2);
}

#[test]
fn paper_tables_pass() {
    let out = unitlab(&["paper-tables"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("Theorem 3.1:"), "{s}");
    assert!(s.contains("Theorem 3.7:"), "{s}");
    assert!(s.contains("58/58 rows pass"), "{s}");
    assert!(!s.contains("FAIL"), "{s}");
    assert!(s.contains("absent from the published table"), "{s}");
}

#[test]
fn paper_tables_json() {
    let out = unitlab(&["paper-tables", "--json"]);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 58);
    assert!(rows.iter().all(|r| r["pass"].as_bool().unwrap()));
}

#[test]
fn verify_small_cap_passes() {
    let out = unitlab(&["verify", "--cap", "1024"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let s = stdout(&out);
    assert!(s.contains("checks pass (grid cap 1024)"), "{s}");
    assert!(!s.contains("FAIL"), "{s}");
}

#[test]
fn verify_fault_injection_exits_3() {
    let out = unitlab(&["verify", "--cap", "64", "--inject-fault"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn oracle_cross_check() {
    let out = unitlab(&["oracle", "--group", "6", "--p", "2", "--cross-check"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("|U(FG)| = 24"), "{s}");
    assert!(s.contains("pair-scan agrees (24 units)"), "{s}");
}

#[test]
fn env_var_overrides_the_cap() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_unitlab"))
            .args(["oracle", "--group", "4", "--p", "2"])
            .env("UNITLAB_CAP", cap)
            .output()
            .expect("binary runs")
    };
    assert_eq!(run("16").status.code(), Some(0)); // 2^4 = 16 fits exactly
    assert_eq!(run("15").status.code(), Some(2));
    assert_eq!(run("not-a-number").status.code(), Some(2));
}

#[test]
fn json_report_round_trips() {
    for args in [
        vec!["compute", "--group", "32", "--q", "31", "--json"],
        vec!["compute", "--group", "8x2x2", "--p", "2", "--json"],
        vec!["symbolic", "--group", "16,2", "--q-mod", "7:16", "--json"],
        vec!["oracle", "--group", "4", "--p", "3", "--json"],
    ] {
        let out = unitlab(&args);
        assert_eq!(code(&out), 0);
        let text = stdout(&out);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        // exactly the documented keys (Value sorts them, so compare as sets)
        let mut keys: Vec<&str> =
            parsed.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["factors", "group", "n", "normalized", "p", "q"], "{args:?}");
        // ... and the emitter writes them in schema order
        let order: Vec<usize> = ["\"group\"", "\"p\"", "\"n\"", "\"q\"", "\"factors\"", "\"normalized\""]
            .iter()
            .map(|k| text.find(k).expect("key present"))
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]), "{args:?}");
        // parse -> emit -> parse is the identity
        let reemitted = serde_json::to_string(&parsed).unwrap();
        let reparsed: serde_json::Value = serde_json::from_str(&reemitted).unwrap();
        assert_eq!(parsed, reparsed);
    }
}

#[test]
fn json_factors_follow_canonical_order() {
    let out = unitlab(&["compute", "--group", "32", "--q", "97", "--json"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // q ≡ 1 (mod 32): thirty-two C_{q-1} factors, a single q_pow entry
    assert_eq!(parsed["factors"][0]["kind"], "q_pow");
    assert_eq!(parsed["factors"][0]["param"], 1);
    assert_eq!(parsed["factors"][0]["mult"], 32);
    assert_eq!(parsed["q"], 97);
}
