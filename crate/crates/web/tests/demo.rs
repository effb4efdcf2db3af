use quiverhh_web::{check_text, hh1_text, pi1_text, split_presentations};

const PAGE_DEFAULT: &str = "field GF(3)
quiver {
  v
  u: v -> v
}
relations {
  u^3
}
---
field GF(3)
quiver {
  v
  u: v -> v
}
relations {
  u^3 - e(v)
}";

#[test]
fn splits_on_dashes() {
    let parts = split_presentations(PAGE_DEFAULT);
    assert_eq!(parts.len(), 2);
    assert_eq!(parts[1].0, "P2");
    assert!(parts[1].1.starts_with("field GF(3)"));
}

#[test]
fn pi1_of_first_presentation() {
    let first = split_presentations(PAGE_DEFAULT).remove(0).1;
    let out = pi1_text(&first, "").unwrap();
    assert!(out.contains("pi1\tZ\n"));
    assert!(out.contains("dual_dim\t1\n"));
}

#[test]
fn hh1_brackets() {
    let first = split_presentations(PAGE_DEFAULT).remove(0).1;
    let out = hh1_text(&first, "").unwrap();
    assert!(out.starts_with("hh1_dim\t3\n"));
    assert!(out.contains("[x0, x2]\t2*x1\n"));
}

#[test]
fn cross_check_report() {
    let out = check_text(PAGE_DEFAULT, "").unwrap();
    assert!(out.contains("mt_rank\t1\n"));
    assert!(out.contains("pi1=Z/3"));
}

#[test]
fn errors_are_reported() {
    assert!(pi1_text("quiver {", "").is_err());
    assert!(pi1_text(PAGE_DEFAULT, "GF(9)").is_err());
}
