//! Characters of `pi_1(Q, I)` and the map `θ` into `HH^1`.
//!
//! A character is stored by its values on the chord loops of a reference walk
//! system. Chord loops form a basis of the cycle lattice and each chord occurs only
//! in its own loop, so the value on any closed chain `z` is
//! `sum_c z[c] f(loop_c)`.

use num_bigint::BigInt;

use super::hh1::HH1;
use super::Endo;
use crate::error::{Error, Result};
use crate::homotopy::HomotopyComplex;
use crate::linalg::{sparse_kernel, EchelonBasis, FieldSpec, Scalar, SparseVec};
use crate::presentation::Bound;
use crate::quiver::WalkSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub field: FieldSpec,
    pub chords: Vec<usize>,
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn zero(w: &WalkSystem, field: FieldSpec) -> Self {
        let chords = w.chords();
        let values = vec![field.zero(); chords.len()];
        Character { field, chords, values }
    }

    /// Parses `index=value,...`, indices into the chord list of `w`; unlisted
    /// chords get 0.
    pub fn parse(spec: &str, w: &WalkSystem, field: FieldSpec) -> Result<Self> {
        let mut f = Character::zero(w, field);
        for (n, part) in spec.split(',').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
            let bad = |m: &str| Error::Parse { line: 1, column: n + 1, message: format!("`{part}`: {m}") };
            let (idx, val) = part.split_once('=').ok_or_else(|| bad("expected index=value"))?;
            let idx: usize = idx.trim().parse().map_err(|_| bad("bad chord index"))?;
            if idx >= f.chords.len() {
                return Err(bad(&format!("only {} chord loops", f.chords.len())));
            }
            let (num, den) = match val.trim().split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (val.trim(), "1"),
            };
            let num: BigInt = num.parse().map_err(|_| bad("bad value"))?;
            let den: BigInt = den.parse().map_err(|_| bad("bad value"))?;
            f.values[idx] = field.from_ratio(&num, &den)?;
        }
        Ok(f)
    }

    /// Value on a closed chain in arrow coordinates.
    pub fn evaluate(&self, chain: &[i64]) -> Scalar {
        let field = self.field;
        self.chords.iter().zip(&self.values).fold(field.zero(), |acc, (&c, v)| &acc + &(v * &field.from_i64(chain[c])))
    }

    fn evaluate_big(&self, chain: &[BigInt]) -> Scalar {
        let field = self.field;
        self.chords
            .iter()
            .zip(&self.values)
            .fold(field.zero(), |acc, (&c, v)| &acc + &(v * &field.from_bigint(&chain[c])))
    }

    /// Vanishes on every pair relation `p̄ - q̄`.
    pub fn check(&self, complex: &HomotopyComplex) -> Result<()> {
        for c in 0..complex.delta1.cols() {
            if !self.evaluate_big(&complex.delta1.column(c)).is_zero() {
                let (p, q) = &complex.pairs[c];
                return Err(Error::CharacterViolation(format!("nonzero on the pair {:?} ~ {:?}", p.arrows, q.arrows)));
            }
        }
        Ok(())
    }
}

/// Basis of the characters, over the chords of `w`.
pub fn character_space(w: &WalkSystem, complex: &HomotopyComplex, field: FieldSpec) -> Vec<Character> {
    let chords = w.chords();
    let rows = (0..complex.delta1.cols()).map(|c| {
        let col = complex.delta1.column(c);
        chords.iter().enumerate().map(|(k, &a)| (k, field.from_bigint(&col[a]))).collect::<SparseVec>()
    });
    sparse_kernel(field, chords.len(), rows)
        .into_iter()
        .map(|v| Character { field, chords: chords.clone(), values: v.to_dense(field, chords.len()) })
        .collect()
}

/// Diagonal derivation with eigenvalue `f(w_i p w_j^-1)` on a basis path `p: i -> j`,
/// with walks `w` (which may differ from the reference system of `f`).
pub fn theta(b: &Bound, w: &WalkSystem, f: &Character, complex: &HomotopyComplex) -> Result<Endo> {
    f.check(complex)?;
    let q = &b.presentation.quiver;
    let m = q.arrow_count();
    let paths = b.algebra.basis_paths().ok_or_else(|| Error::NoPresentation("algebra has no path basis".into()))?;
    let values: Vec<Scalar> = paths
        .iter()
        .map(|p| {
            let wi = w.walk(p.source).chain(m);
            let wj = w.walk(p.target).chain(m);
            let counts = p.arrow_counts(m);
            let chain: Vec<i64> = (0..m).map(|a| wi[a] + counts[a] - wj[a]).collect();
            f.evaluate(&chain)
        })
        .collect();
    Ok(Endo::diagonal(&values))
}

/// Coset of `θ(f)`.
pub fn theta_coset(b: &Bound, w: &WalkSystem, f: &Character, complex: &HomotopyComplex, h: &HH1) -> Result<SparseVec> {
    let d = theta(b, w, f, complex)?;
    h.coset_of(&d).ok_or_else(|| Error::InvariantViolation("θ(f) is not a derivation vanishing on idempotents".into()))
}

/// `dim Im θ`, from a basis of characters over the chords of `w`.
pub fn theta_image_dimension(b: &Bound, w: &WalkSystem, complex: &HomotopyComplex, h: &HH1) -> Result<usize> {
    let mut span = EchelonBasis::new(h.field());
    for f in character_space(w, complex, b.algebra.field()) {
        span.insert(&theta_coset(b, w, &f, complex, h)?);
    }
    Ok(span.rank())
}

/// Values `g(i) = f(w'_i w_i^-1)`: `θ_w'(f) - θ_w(f) = [sum_i g(i) e_i, -]`.
pub fn walk_correction(f: &Character, w: &WalkSystem, w2: &WalkSystem, m: usize) -> Vec<Scalar> {
    (0..w.walks.len())
        .map(|i| {
            let a = w2.walk(i).chain(m);
            let b = w.walk(i).chain(m);
            let z: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            f.evaluate(&z)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::{der0_from_presentation, hh1_from_der0};
    use crate::homotopy::{analyze, DEFAULT_SUPPORT_CAP};
    use crate::presentation::parse_presentation;
    use crate::quiver::spanning_walk_system;

    #[test]
    fn kronecker_chord_character() {
        let b =
            parse_presentation("quiver { 1 2; a: 1 -> 2; b: 1 -> 2 }; relations { }", None).unwrap().build().unwrap();
        let h = analyze(&b, DEFAULT_SUPPORT_CAP).unwrap();
        let w = spanning_walk_system(&b.presentation.quiver);
        let f = Character::parse("0=1", &w, FieldSpec::Rationals).unwrap();
        let d = theta(&b, &w, &f, &h.complex).unwrap();
        // basis e(1), e(2), a, b
        let one = FieldSpec::Rationals.one();
        assert_eq!(d, Endo::diagonal(&[one.zero_like(), one.zero_like(), one.zero_like(), one.clone()]));
        let hh = hh1_from_der0(&b.algebra, der0_from_presentation(&b).unwrap()).unwrap();
        assert!(!theta_coset(&b, &w, &f, &h.complex, &hh).unwrap().is_zero());
        assert_eq!(theta_image_dimension(&b, &w, &h.complex, &hh).unwrap(), 1);
    }

    #[test]
    fn zero_character_gives_zero() {
        let b = parse_presentation("quiver { v; u: v -> v }; relations { u^3 }", None).unwrap().build().unwrap();
        let h = analyze(&b, DEFAULT_SUPPORT_CAP).unwrap();
        let w = spanning_walk_system(&b.presentation.quiver);
        let f = Character::zero(&w, FieldSpec::Rationals);
        assert!(theta(&b, &w, &f, &h.complex).unwrap().is_zero());
    }

    #[test]
    fn violating_character_rejected() {
        let b = parse_presentation("field GF(3); quiver { v; u: v -> v }; relations { u^3 - e(v) }", None)
            .unwrap()
            .build()
            .unwrap();
        let h = analyze(&b, DEFAULT_SUPPORT_CAP).unwrap();
        let w = spanning_walk_system(&b.presentation.quiver);
        // 3 * f(u) = 0 holds in GF(3) for every value.
        let f = Character::parse("0=1", &w, FieldSpec::Prime(3)).unwrap();
        assert!(theta(&b, &w, &f, &h.complex).is_ok());
        let bq =
            parse_presentation("quiver { v; u: v -> v }; relations { u^3 - e(v) }", None).unwrap().build().unwrap();
        let hq = analyze(&bq, DEFAULT_SUPPORT_CAP).unwrap();
        let f = Character::parse("0=1", &w, FieldSpec::Rationals).unwrap();
        assert!(matches!(theta(&bq, &w, &f, &hq.complex), Err(Error::CharacterViolation(_))));
    }
}
