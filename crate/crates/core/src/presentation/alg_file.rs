//! Parser for `.alg` structure-constant files.
//!
//! ```text
//! dim 2
//! field GF(2)
//! idempotents 0
//! 0 0 -> 1*0
//! 0 1 -> 1*1
//! 1 0 -> 1*1
//! 1 1 -> 1*0
//! ```
//!
//! Basis indices are 0-based; a line `i j -> ...` gives `b_i * b_j`, and products
//! without a line (or with right side `0`) are zero. An optional `labels l0 l1 ...`
//! line names the basis.

use num_bigint::BigInt;

use super::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, SparseVec};

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn parse_ratio(tok: &str, line: usize) -> Result<(BigInt, BigInt)> {
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| perr(line, 1, format!("bad coefficient `{tok}`")))?;
    let d: BigInt = d.trim().parse().map_err(|_| perr(line, 1, format!("bad coefficient `{tok}`")))?;
    Ok((n, d))
}

fn parse_field(s: &str, line: usize) -> Result<FieldSpec> {
    let s = s.trim();
    if s == "Q" || s == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    let inner = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| perr(line, 7, format!("unknown field `{s}`")))?;
    let p: u32 = inner.trim().parse().map_err(|_| perr(line, 7, format!("bad characteristic `{inner}`")))?;
    FieldSpec::prime(p).map_err(|e| perr(line, 7, e.to_string()))
}

/// Parses and validates a structure-constant table.
pub fn ingest_structure_constants(text: &str, field_override: Option<FieldSpec>) -> Result<FiniteDimAlgebra> {
    let mut dim: Option<usize> = None;
    let mut field: Option<FieldSpec> = None;
    let mut idempotents: Option<Vec<usize>> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut products: Vec<(usize, usize, usize, Vec<(BigInt, BigInt, usize)>)> = Vec::new();

    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("dim") {
            dim = Some(rest.trim().parse().map_err(|_| perr(line, 5, "bad dimension"))?);
        } else if let Some(rest) = content.strip_prefix("field") {
            field = Some(parse_field(rest, line)?);
        } else if let Some(rest) = content.strip_prefix("idempotents") {
            idempotents = Some(
                rest.split_whitespace()
                    .map(|t| t.parse().map_err(|_| perr(line, 13, format!("bad index `{t}`"))))
                    .collect::<Result<_>>()?,
            );
        } else if let Some(rest) = content.strip_prefix("labels") {
            labels = Some(rest.split_whitespace().map(str::to_string).collect());
        } else {
            let (lhs, rhs) = content.split_once("->").ok_or_else(|| perr(line, 1, "expected `i j -> ...`"))?;
            let idx: Vec<usize> = lhs
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| perr(line, 1, format!("bad index `{t}`"))))
                .collect::<Result<_>>()?;
            if idx.len() != 2 {
                return Err(perr(line, 1, "expected two basis indices"));
            }
            let mut terms = Vec::new();
            let rhs = rhs.trim();
            if rhs != "0" && !rhs.is_empty() {
                // Split on + and - while keeping signs.
                let normalized = rhs.replace('-', "+-");
                for piece in normalized.split('+').map(str::trim).filter(|s| !s.is_empty()) {
                    let (coeff, basis) = match piece.split_once('*') {
                        Some((c, b)) => (c.trim().to_string(), b.trim()),
                        None => match piece.strip_prefix('-') {
                            Some(b) => ("-1".to_string(), b.trim()),
                            None => ("1".to_string(), piece),
                        },
                    };
                    let coeff = if coeff == "-" { "-1".to_string() } else { coeff };
                    let (n, d) = parse_ratio(&coeff.replace(' ', ""), line)?;
                    let k: usize = basis.parse().map_err(|_| perr(line, 1, format!("bad basis index `{basis}`")))?;
                    terms.push((n, d, k));
                }
            }
            products.push((line, idx[0], idx[1], terms));
        }
    }
    let dim = dim.ok_or_else(|| perr(1, 1, "missing `dim` line"))?;
    let field = field_override.or(field).unwrap_or(FieldSpec::Rationals);
    let idempotents = idempotents.ok_or_else(|| perr(1, 1, "missing `idempotents` line"))?;
    let labels = match labels {
        Some(l) if l.len() == dim => l,
        Some(_) => return Err(perr(1, 1, "label count does not match dim")),
        None => (0..dim).map(|i| format!("b{i}")).collect(),
    };
    let mut table = vec![vec![SparseVec::new(); dim]; dim];
    for (line, i, j, terms) in products {
        if i >= dim || j >= dim {
            return Err(perr(line, 1, "basis index out of range"));
        }
        let mut v = SparseVec::new();
        for (n, d, k) in terms {
            if k >= dim {
                return Err(perr(line, 1, "basis index out of range"));
            }
            let c =
                field.from_ratio(&n, &d).map_err(|_| perr(line, 1, format!("coefficient {n}/{d} not in {field}")))?;
            v.add_term(k, &c);
        }
        table[i][j] = v;
    }
    FiniteDimAlgebra::from_table(field, labels, idempotents, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Group algebra table from a multiplication function on `0..n`.
    fn group_table(n: usize, field: &str, mul: impl Fn(usize, usize) -> usize) -> String {
        let mut s = format!("dim {n}\nfield {field}\nidempotents 0\n");
        for i in 0..n {
            for j in 0..n {
                s.push_str(&format!("{i} {j} -> 1*{}\n", mul(i, j)));
            }
        }
        s
    }

    #[test]
    fn cyclic_group_of_order_two() {
        let a = ingest_structure_constants(&group_table(2, "GF(2)", |i, j| (i + j) % 2), None).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_commutative());
    }

    #[test]
    fn klein_four_group() {
        let a = ingest_structure_constants(&group_table(4, "GF(2)", |i, j| i ^ j), None).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.is_commutative());
    }

    #[test]
    fn non_associative_rejected() {
        // b1 b1 = b2, b1 b2 = b1, b2 b1 = 0: (b1 b1) b1 = 0 but b1 (b1 b1) = b1.
        let text = "dim 3\nfield Q\nidempotents 0\n0 0 -> 1*0\n0 1 -> 1*1\n1 0 -> 1*1\n0 2 -> 1*2\n2 0 -> 1*2\n1 1 -> 1*2\n1 2 -> 1*1\n";
        let err = ingest_structure_constants(text, None).unwrap_err();
        assert!(matches!(err, Error::NonAssociative(..)), "{err}");
    }

    #[test]
    fn idempotent_axioms_enforced() {
        let text = "dim 2\nfield Q\nidempotents 0 1\n0 0 -> 1*0\n1 1 -> 1*1\n0 1 -> 1*1\n";
        assert!(matches!(ingest_structure_constants(text, None), Err(Error::IdempotentAxioms(_))));
    }
}
