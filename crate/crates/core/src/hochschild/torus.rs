//! Diagonal tori of a presentation.

use super::hh1::HH1;
use super::Endo;
use crate::error::{Error, Result};
use crate::linalg::{sparse_kernel, EchelonBasis, Scalar, SparseVec};
use crate::presentation::Bound;

#[derive(Clone, Debug)]
pub struct Torus {
    /// Basis of the admissible arrow weights.
    pub weights: Vec<Vec<Scalar>>,
    /// Diagonal derivation of each weight vector.
    pub derivations: Vec<Endo>,
    /// Independent cosets spanning the image in `HH^1`.
    pub generators: Vec<SparseVec>,
}

impl Torus {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }
}

/// The derivation scaling each basis path by the total weight of its arrows.
pub fn diagonal_derivation(b: &Bound, weights: &[Scalar]) -> Result<Endo> {
    let paths = b.algebra.basis_paths().ok_or_else(|| Error::NoPresentation("algebra has no path basis".into()))?;
    let field = b.algebra.field();
    let values: Vec<Scalar> =
        paths.iter().map(|p| p.arrows.iter().fold(field.zero(), |acc, &a| &acc + &weights[a])).collect();
    Ok(Endo::diagonal(&values))
}

/// Weights `λ` with `δ_λ(r) ∈ I` for every generating relation `r`.
pub fn diagonal_torus(b: &Bound, h: &HH1) -> Result<Torus> {
    let a = &b.algebra;
    let field = a.field();
    let m = b.presentation.quiver.arrow_count();
    let mut rows = Vec::new();
    for r in &b.presentation.relations {
        // δ_λ(r) = sum over terms c·p of (λ·p̄) c p; collect per arrow.
        let mut per_arrow: Vec<SparseVec> = vec![SparseVec::new(); m];
        for (p, c) in r.terms() {
            let v = a.element_to_vec(&b.rewrite.path_normal_form(p))?;
            for (arrow, &count) in p.arrow_counts(m).iter().enumerate() {
                if count != 0 {
                    per_arrow[arrow].add_scaled(&v, &(c * &field.from_i64(count)));
                }
            }
        }
        let coords: std::collections::BTreeSet<usize> = per_arrow.iter().flat_map(|v| v.support()).collect();
        for o in coords {
            rows.push((0..m).filter_map(|arrow| per_arrow[arrow].get(o).map(|c| (arrow, c.clone()))).collect());
        }
    }
    let weights: Vec<Vec<Scalar>> = sparse_kernel(field, m, rows).iter().map(|v| v.to_dense(field, m)).collect();
    let derivations = weights.iter().map(|w| diagonal_derivation(b, w)).collect::<Result<Vec<_>>>()?;
    let mut span = EchelonBasis::new(field);
    let mut generators = Vec::new();
    for d in &derivations {
        if !d.is_derivation(a) {
            return Err(Error::InvariantViolation("diagonal weight does not give a derivation".into()));
        }
        let c = h.coset_of(d).ok_or_else(|| Error::InvariantViolation("diagonal derivation not in Der_0".into()))?;
        if span.insert(&c).is_some() {
            generators.push(c);
        }
    }
    Ok(Torus { weights, derivations, generators })
}
