//! Restricted Lie predicates on `HH^1`: toral elements, p-nilpotence, nilpotence.

use num_bigint::BigInt;

use super::hh1::HH1;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseVec};

pub const DEFAULT_TORAL_CAP: u64 = 1_000_000;

pub fn is_toral(h: &HH1, x: &SparseVec) -> Result<bool> {
    Ok(h.ppower(x)? == *x)
}

/// First nonzero toral element among `GF(p)`-combinations of the basis, in
/// lexicographic order of coefficient vectors.
pub fn find_toral(h: &HH1, cap: u64) -> Result<Option<SparseVec>> {
    let p = h.field().characteristic();
    if p == 0 {
        return Err(Error::WrongCharacteristic("toral search needs characteristic p".into()));
    }
    let n = h.dim();
    let size = BigInt::from(p).pow(n as u32);
    if size > BigInt::from(cap) {
        return Err(Error::SearchSpaceTooLarge(format!("{p}^{n} combinations exceed the toral cap {cap}")));
    }
    let total = p.pow(n as u32) as u64;
    let elements = h.field().elements().expect("finite field");
    for code in 1..total {
        let mut c = code;
        let mut x = SparseVec::new();
        for i in (0..n).rev() {
            x.add_term(i, &elements[(c % p as u64) as usize]);
            c /= p as u64;
        }
        if is_toral(h, &x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub lie_nilpotent: bool,
    /// Nilpotency class when nilpotent.
    pub class: Option<usize>,
    /// Characteristic `p` only: no toral element over `GF(p)` within the cap and
    /// every basis element p-nilpotent.
    pub p_nilpotent_witnessed: Option<bool>,
}

fn span_dim(h: &HH1, vecs: &[SparseVec]) -> (usize, Vec<SparseVec>) {
    let mut e = EchelonBasis::new(h.field());
    let basis: Vec<SparseVec> = vecs.iter().filter(|v| e.insert(v).is_some()).cloned().collect();
    (basis.len(), basis)
}

pub fn nilpotency_report(h: &HH1, toral_cap: u64) -> Result<NilpotencyReport> {
    nilpotency_report_with(h, toral_cap, &[])
}

/// As `nilpotency_report`, trying the `known` candidates for a toral element
/// before the exhaustive search.
pub fn nilpotency_report_with(h: &HH1, toral_cap: u64, known: &[SparseVec]) -> Result<NilpotencyReport> {
    let n = h.dim();
    let mut current: Vec<SparseVec> = (0..n).map(|i| h.unit(i)).collect();
    let mut dim = n;
    let mut class = 0;
    while dim > 0 {
        let products: Vec<SparseVec> =
            (0..n).flat_map(|i| current.iter().map(move |y| (i, y))).map(|(i, y)| h.bracket(&h.unit(i), y)).collect();
        let (next_dim, next) = span_dim(h, &products);
        class += 1;
        if next_dim == dim {
            break;
        }
        dim = next_dim;
        current = next;
    }
    let lie_nilpotent = dim == 0;
    let p_nilpotent_witnessed = if h.field().characteristic() == 0 {
        None
    } else {
        let mut no_toral = true;
        for x in known.iter().filter(|x| !x.is_zero()) {
            if is_toral(h, x)? {
                no_toral = false;
                break;
            }
        }
        if no_toral {
            no_toral = match find_toral(h, toral_cap) {
                Ok(found) => found.is_none(),
                Err(Error::SearchSpaceTooLarge(_)) => false,
                Err(e) => return Err(e),
            };
        }
        let mut all_nilpotent = true;
        for i in 0..n {
            let mut x = h.unit(i);
            let mut steps = 0;
            while !x.is_zero() && steps <= n + 1 {
                x = h.ppower(&x)?;
                steps += 1;
            }
            all_nilpotent &= x.is_zero();
        }
        Some(no_toral && all_nilpotent)
    };
    Ok(NilpotencyReport { lie_nilpotent, class: lie_nilpotent.then_some(class), p_nilpotent_witnessed })
}

/// `ad(x^[p]) = ad(x)^p` for every basis element.
pub fn check_ad_ppower(h: &HH1) -> Result<bool> {
    let p = h.field().characteristic();
    for i in 0..h.dim() {
        let x = h.unit(i);
        let lhs = h.ad(&h.ppower(&x)?);
        for (j, col) in lhs.iter().enumerate() {
            let mut y = h.unit(j);
            for _ in 0..p {
                y = h.bracket(&x, &y);
            }
            if *col != y {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Jacobson's formula for `(x + y)^[p]` on all basis pairs, for `p = 2, 3`.
pub fn check_jacobson_formula(h: &HH1) -> Result<Option<bool>> {
    let p = h.field().characteristic();
    if p != 2 && p != 3 {
        return Ok(None);
    }
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            let (x, y) = (h.unit(i), h.unit(j));
            let lhs = h.ppower(&x.add(&y))?;
            let mut rhs = h.ppower(&x)?.add(&h.ppower(&y)?);
            if p == 2 {
                rhs = rhs.add(&h.bracket(&x, &y));
            } else {
                let yx = h.bracket(&y, &x);
                let s1 = h.bracket(&y, &yx);
                let half = h.field().from_i64(2).inv().expect("p = 3");
                let s2 = h.bracket(&x, &yx).scaled(&half);
                rhs = rhs.add(&s1).add(&s2);
            }
            if lhs != rhs {
                return Ok(Some(false));
            }
        }
    }
    Ok(Some(true))
}
