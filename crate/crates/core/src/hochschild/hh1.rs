//! `HH^1(A)` with bracket and p-power tables.

use super::derivations::{derivation_space, Flavor};
use super::Endo;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, FieldSpec, Scalar, SparseVec};
use crate::presentation::FiniteDimAlgebra;

/// Cosets are written in the basis of representatives `reps`; a coset vector is a
/// `SparseVec` indexed by representative.
#[derive(Clone, Debug)]
pub struct HH1 {
    field: FieldSpec,
    algebra_dim: usize,
    reps: Vec<Endo>,
    inner_rank: usize,
    der0_dim: usize,
    echelon: EchelonBasis,
    bracket: Vec<Vec<SparseVec>>,
    ppower: Option<Vec<SparseVec>>,
}

impl HH1 {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn der0_dim(&self) -> usize {
        self.der0_dim
    }

    pub fn inn0_dim(&self) -> usize {
        self.inner_rank
    }

    pub fn representatives(&self) -> &[Endo] {
        &self.reps
    }

    /// `[x_i, x_j]`.
    pub fn bracket_entry(&self, i: usize, j: usize) -> &SparseVec {
        &self.bracket[i][j]
    }

    /// `x_i^[p]` in characteristic `p`.
    pub fn ppower_entry(&self, i: usize) -> Option<&SparseVec> {
        self.ppower.as_ref().map(|t| &t[i])
    }

    /// Coset of a derivation in `Der_0`; `None` when `f` is not in `Der_0`.
    pub fn coset_of(&self, f: &Endo) -> Option<SparseVec> {
        let (residual, coeffs) = self.echelon.reduce(&f.flatten());
        if !residual.is_zero() {
            return None;
        }
        Some(
            coeffs
                .iter()
                .filter(|&(k, _)| k >= self.inner_rank)
                .map(|(k, c)| (k - self.inner_rank, c.clone()))
                .collect(),
        )
    }

    pub fn is_inner(&self, f: &Endo) -> bool {
        self.coset_of(f).is_some_and(|v| v.is_zero())
    }

    pub fn representative(&self, x: &SparseVec) -> Endo {
        let mut out = Endo::zero(self.algebra_dim);
        for (i, c) in x.iter() {
            out.add_scaled(&self.reps[i], c);
        }
        out
    }

    /// Bilinear extension of the bracket table.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.bracket[i][j], &(a * b));
            }
        }
        out
    }

    /// `x^[p]`, computed on a representative and reduced.
    pub fn ppower(&self, x: &SparseVec) -> Result<SparseVec> {
        let p = self.field.characteristic();
        if p == 0 {
            return Err(Error::WrongCharacteristic("p-power map needs characteristic p".into()));
        }
        self.coset_of(&self.representative(x).pow(p))
            .ok_or_else(|| Error::InvariantViolation("p-th power of a derivation left Der_0".into()))
    }

    /// Matrix of `ad x` on the coset basis, as columns.
    pub fn ad(&self, x: &SparseVec) -> Vec<SparseVec> {
        (0..self.dim()).map(|j| self.bracket(x, &SparseVec::unit(j, self.field.one()))).collect()
    }

    pub fn unit(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, self.field.one())
    }

    pub fn zero_scalar(&self) -> Scalar {
        self.field.zero()
    }

    /// Antisymmetry and Jacobi on all basis elements.
    pub fn check_lie_axioms(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            if !self.bracket[i][i].is_zero() {
                return false;
            }
            for j in 0..n {
                if self.bracket[i][j].add(&self.bracket[j][i]) != SparseVec::new() {
                    return false;
                }
                for k in 0..n {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    let s = self
                        .bracket(&x, &self.bracket(&y, &z))
                        .add(&self.bracket(&y, &self.bracket(&z, &x)))
                        .add(&self.bracket(&z, &self.bracket(&x, &y)));
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `HH^1` from the Leibniz solve for `Der_0`.
pub fn hh1(a: &FiniteDimAlgebra) -> Result<HH1> {
    hh1_from_der0(a, derivation_space(a, Flavor::Der0).basis)
}

/// `HH^1` from a spanning family of `Der_0`. Representatives are the members of
/// the family not in the span of `Inn_0` and the earlier members.
pub fn hh1_from_der0(a: &FiniteDimAlgebra, der0: Vec<Endo>) -> Result<HH1> {
    let field = a.field();
    let inner = derivation_space(a, Flavor::Inn0).basis;
    let mut echelon = EchelonBasis::new(field);
    for f in &inner {
        echelon.insert(&f.flatten());
    }
    let inner_rank = echelon.rank();
    let mut reps = Vec::new();
    for f in der0 {
        if !f.kills_idempotents(a) {
            return Err(Error::InvariantViolation("Der_0 element does not kill the idempotents".into()));
        }
        if echelon.insert(&f.flatten()).is_some() {
            reps.push(f);
        }
    }
    let der0_dim = echelon.rank();
    let mut h =
        HH1 { field, algebra_dim: a.dim(), reps, inner_rank, der0_dim, echelon, bracket: Vec::new(), ppower: None };
    let n = h.dim();
    let mut bracket = vec![vec![SparseVec::new(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = h
                .coset_of(&h.reps[i].bracket(&h.reps[j]))
                .ok_or_else(|| Error::InvariantViolation("bracket of derivations left Der_0".into()))?;
            bracket[j][i] = c.scaled(&-field.one());
            bracket[i][j] = c;
        }
    }
    h.bracket = bracket;
    if field.characteristic() != 0 {
        let table = (0..n).map(|i| h.ppower(&h.unit(i))).collect::<Result<Vec<_>>>()?;
        h.ppower = Some(table);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn algebra(text: &str) -> FiniteDimAlgebra {
        parse_presentation(text, None).unwrap().build().unwrap().algebra
    }

    #[test]
    fn a2_has_no_outer_derivations() {
        let h = hh1(&algebra("quiver { 1 2; a: 1 -> 2 }; relations { }")).unwrap();
        assert_eq!(h.dim(), 0);
        assert_eq!(h.der0_dim(), 1);
    }

    #[test]
    fn kronecker_quiver() {
        // HH^1 of the Kronecker algebra is gl_2 / scalars: dimension 3.
        let h = hh1(&algebra("quiver { 1 2; a: 1 -> 2; b: 1 -> 2 }; relations { }")).unwrap();
        assert_eq!(h.dim(), 3);
        assert!(h.check_lie_axioms());
    }
}
