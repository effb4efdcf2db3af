use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../core/corpus");
    p.push(format!("{name}.bqv"));
    p.to_string_lossy().into_owned()
}

fn quiverhh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverhh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t')))
}

fn scratch(name: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("quiverhh-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn betti_of_closed_chain() {
    let o = quiverhh(&["betti", &corpus("kronecker_cycle2")]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(value(&s, "vertices"), Some("3"));
    assert_eq!(value(&s, "arrows"), Some("6"));
    assert_eq!(value(&s, "betti"), Some("4"));
}

#[test]
fn pi1_torsion_and_complex() {
    let o = quiverhh(&["pi1", &corpus("jw_p3_x_plus_1"), "--complex"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(value(&s, "pi1"), Some("Z/3"));
    assert_eq!(value(&s, "dual_dim"), Some("1"));
    assert!(s.contains("delta0\n[0]\n"));
}

#[test]
fn field_flag_overrides_file() {
    let o = quiverhh(&["pi1", &corpus("jw_p3_x_plus_1"), "--field", "Q"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(value(&s, "field"), Some("Q"));
    assert_eq!(value(&s, "dual_dim"), Some("0"));
}

#[test]
fn hh1_tables() {
    let o = quiverhh(&["hh1", &corpus("jw_p3_x"), "--bracket", "--ppower"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(value(&s, "hh1_dim"), Some("3"));
    assert_eq!(value(&s, "x1"), Some("u -> u"));
    assert!(s.contains("bracket\tx0\tx2\t2*x1\n"));
    assert!(s.contains("ppower\tx1\tx1\n"));
    assert!(s.contains("ppower\tx0\t0\n"));
}

#[test]
fn ppower_over_rationals_is_a_usage_error() {
    let o = quiverhh(&["hh1", &corpus("kronecker"), "--ppower"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn torus_and_theta() {
    let o = quiverhh(&["torus", &corpus("kronecker_a3")]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "torus_dim"), Some("1"));
    let o = quiverhh(&["theta", &corpus("kronecker"), "--character", "0=1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("eigenvalue\tb\t1\n"));
    assert_ne!(value(&s, "coset"), Some("0"));
}

#[test]
fn theta_rejects_bad_spec() {
    let o = quiverhh(&["theta", &corpus("kronecker"), "--character", "5=1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_two_presentations() {
    let o = quiverhh(&["check", &corpus("jw_p5_x"), &corpus("jw_p5_x_plus_1")]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(value(&s, "mt_rank"), Some("1"));
    assert!(s.lines().last().unwrap().starts_with("record\tjw_p5_x\tGF(5)\t5\t5\t1\t1\tyes"));
}

#[test]
fn check_rejects_different_algebras() {
    let o = quiverhh(&["check", &corpus("jw_p2_x"), &corpus("jw_p3_x"), "--field", "GF(2)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn corpus_passes() {
    let o = quiverhh(&["corpus"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    let passed = value(&s, "passed").unwrap();
    let (a, b) = passed.split_once('/').unwrap();
    assert_eq!(a, b);
    assert!(s.contains("published-discrepant"));
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(quiverhh(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(quiverhh(&["betti"]).status.code(), Some(1));
    assert_eq!(quiverhh(&["betti", "/nonexistent/file.bqv"]).status.code(), Some(1));
    let bad = scratch("bad.bqv", "quiver { v; x: v -> w }");
    assert_eq!(quiverhh(&["betti", &bad]).status.code(), Some(1));
    assert_eq!(quiverhh(&["betti", &corpus("kronecker"), "--field", "GF(4)"]).status.code(), Some(1));
    assert_eq!(quiverhh(&["--help"]).status.code(), Some(0));
}

#[test]
fn soundness_bounds_exit_two() {
    let infinite = scratch("free.bqv", "quiver { v; x: v -> v; y: v -> v }; relations { x^2; y^2 }");
    assert_eq!(quiverhh(&["pi1", &infinite]).status.code(), Some(2));
    let o = quiverhh(&["pi1", &corpus("double_loop"), "--support-cap", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_against_group_table() {
    let mut table = String::from("dim 3\nfield GF(3)\nidempotents 0\n");
    for i in 0..3 {
        for j in 0..3 {
            table.push_str(&format!("{i} {j} -> 1*{}\n", (i + j) % 3));
        }
    }
    let t = scratch("z3.alg", &table);
    let o = quiverhh(&["check", &corpus("jw_p3_x"), &t]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().any(|l| l.starts_with("table\t") && l.ends_with("\tmatches")));

    let t = scratch("k3.alg", "dim 3\nfield GF(3)\nidempotents 0 1 2\n0 0 -> 1*0\n1 1 -> 1*1\n2 2 -> 1*2\n");
    let o = quiverhh(&["check", &corpus("jw_p3_x"), &t]);
    assert_eq!(o.status.code(), Some(1));
}
