use std::fmt::Write as _;

use quiverhh::driver::{analyze_presentation, load, run_presentations, Options};
use quiverhh::homotopy::analyze;
use quiverhh::linalg::FieldSpec;
use quiverhh::quiver::betti_number;
use wasm_bindgen::prelude::*;

fn options(field: &str) -> quiverhh::Result<Options> {
    let field = match field.trim() {
        "" => None,
        f => Some(f.parse::<FieldSpec>()?),
    };
    Ok(Options { field, ..Options::default() })
}

/// `---` on its own line separates presentations.
pub fn split_presentations(text: &str) -> Vec<(String, String)> {
    text.split("\n---")
        .map(|s| s.trim_start_matches('-').trim())
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(i, s)| (format!("P{}", i + 1), s.to_string()))
        .collect()
}

pub fn pi1_text(text: &str, field: &str) -> quiverhh::Result<String> {
    let opts = options(field)?;
    let b = load(text, &opts)?;
    let h = analyze(&b, opts.support_cap)?;
    let q = &b.presentation.quiver;
    let mut out = String::new();
    writeln!(out, "betti\t{}", betti_number(q)).unwrap();
    writeln!(out, "pi1\t{}", h.result.pi1_ab).unwrap();
    writeln!(out, "dual_dim\t{}", h.result.dual_dim).unwrap();
    writeln!(out, "status\t{}", h.status).unwrap();
    for (p, r) in &h.complex.pairs {
        writeln!(out, "pair\t{}\t{}", q.path_label(p), q.path_label(r)).unwrap();
    }
    Ok(out)
}

pub fn hh1_text(text: &str, field: &str) -> quiverhh::Result<String> {
    let opts = options(field)?;
    let x = analyze_presentation("input", load(text, &opts)?, &opts)?;
    let h = &x.hh1;
    let mut out = String::new();
    writeln!(out, "hh1_dim\t{}", h.dim()).unwrap();
    writeln!(out, "torus_dim\t{}", x.torus.dim()).unwrap();
    for i in 0..h.dim() {
        for j in i + 1..h.dim() {
            let c = h.bracket_entry(i, j);
            if !c.is_zero() {
                let terms: Vec<String> = c.iter().map(|(k, v)| format!("{v}*x{k}")).collect();
                writeln!(out, "[x{i}, x{j}]\t{}", terms.join(" + ")).unwrap();
            }
        }
    }
    Ok(out)
}

pub fn check_text(text: &str, field: &str) -> quiverhh::Result<String> {
    let opts = options(field)?;
    Ok(run_presentations("input", &split_presentations(text), &opts)?.to_string())
}

fn js(r: quiverhh::Result<String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn pi1(text: &str, field: &str) -> Result<String, JsValue> {
    js(pi1_text(text, field))
}

#[wasm_bindgen]
pub fn hh1(text: &str, field: &str) -> Result<String, JsValue> {
    js(hh1_text(text, field))
}

#[wasm_bindgen]
pub fn check(text: &str, field: &str) -> Result<String, JsValue> {
    js(check_text(text, field))
}
