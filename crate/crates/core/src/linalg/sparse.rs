//! Sparse vectors and an incremental echelon basis with coefficient tracking.

use std::collections::BTreeMap;

use super::field::{FieldSpec, Scalar};

/// A sparse vector: index to nonzero scalar.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct SparseVec {
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: BTreeMap::new() }
    }

    pub fn unit(i: usize, one: Scalar) -> Self {
        let mut v = Self::new();
        v.add_term(i, &one);
        v
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        let mut s = Self::new();
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                s.entries.insert(i, x.clone());
            }
        }
        s
    }

    pub fn to_dense(&self, field: FieldSpec, len: usize) -> Vec<Scalar> {
        let mut d = vec![field.zero(); len];
        for (&i, x) in &self.entries {
            d[i] = x.clone();
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(&i, x)| (i, x))
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    pub fn first(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next().map(|(&i, x)| (i, x))
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(&i, x)| (i, x * c)).collect() }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (i, x) in other.iter() {
            out.add_term(i, &-x);
        }
        out
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (i, x) in other.iter() {
            out.add_term(i, x);
        }
        out
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in iter {
            v.add_term(i, &c);
        }
        v
    }
}

/// An echelon basis grown one vector at a time.
///
/// Each stored row remembers which combination of the inserted vectors produced
/// it, so any vector in the span can be written in terms of the accepted inputs.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: FieldSpec,
    /// Rows keyed by pivot index, pivot coefficient normalized to one.
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    accepted: usize,
}

impl EchelonBasis {
    pub fn new(field: FieldSpec) -> Self {
        EchelonBasis { field, rows: BTreeMap::new(), accepted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis: returns `(residual, coefficients)` with
    /// `v = residual + sum coefficients[k] * input_k`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut residual = v.clone();
        let mut coeffs = SparseVec::new();
        // Pivots only move right as we eliminate, so walk them in order.
        for (&pivot, (row, comb)) in &self.rows {
            let Some(c) = residual.get(pivot).cloned() else {
                continue;
            };
            residual.add_scaled(row, &-&c);
            coeffs.add_scaled(comb, &c);
        }
        (residual, coeffs)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts `v`. Returns the input index it was accepted under, or `None` when
    /// `v` was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let (residual, coeffs) = self.reduce(v);
        let (pivot, lead) = match residual.first() {
            Some((p, c)) => (p, c.clone()),
            None => return None,
        };
        let idx = self.accepted;
        self.accepted += 1;
        let inv = lead.inv().expect("nonzero pivot");
        // residual = v - sum coeffs_k input_k, and v is the new input `idx`.
        let mut comb = coeffs.scaled(&-self.field.one());
        comb.add_term(idx, &self.field.one());
        let row = residual.scaled(&inv);
        let comb = comb.scaled(&inv);
        // Keep rows reduced: clear the new pivot from existing rows.
        for (r, c) in self.rows.values_mut() {
            if let Some(x) = r.get(pivot).cloned() {
                r.add_scaled(&row, &-&x);
                c.add_scaled(&comb, &-&x);
            }
        }
        self.rows.insert(pivot, (row, comb));
        Some(idx)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }
}

/// Basis of `{x in k^ncols : <row, x> = 0 for every row}`, one vector per free
/// column of the reduced system.
pub fn sparse_kernel(field: FieldSpec, ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for row in rows {
        let mut r = row;
        for (&pivot, prow) in &reduced {
            if let Some(c) = r.get(pivot).cloned() {
                r.add_scaled(prow, &-&c);
            }
        }
        let Some((pivot, lead)) = r.first().map(|(p, c)| (p, c.clone())) else {
            continue;
        };
        let r = r.scaled(&lead.inv().expect("nonzero pivot"));
        for prow in reduced.values_mut() {
            if let Some(c) = prow.get(pivot).cloned() {
                prow.add_scaled(&r, &-&c);
            }
        }
        reduced.insert(pivot, r);
    }
    let one = field.one();
    (0..ncols)
        .filter(|c| !reduced.contains_key(c))
        .map(|free| {
            let mut v = SparseVec::unit(free, one.clone());
            for (&pivot, prow) in &reduced {
                if let Some(c) = prow.get(free) {
                    v.add_term(pivot, &-c);
                }
            }
            v
        })
        .collect()
}
