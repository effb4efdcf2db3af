//! Derivations, `HH^1(A) = Der_0(A) / Inn_0(A)` as a (restricted) Lie algebra,
//! diagonal tori and the map from characters of `pi_1` into `HH^1`.

pub mod derivations;
pub mod hh1;
pub mod restricted;
pub mod theta;
pub mod torus;

pub use derivations::{der0_from_presentation, derivation_space, inner_derivation, DerivationSpace, Flavor};
pub use hh1::{hh1, hh1_from_der0, HH1};
pub use restricted::{
    find_toral, is_toral, nilpotency_report, nilpotency_report_with, NilpotencyReport, DEFAULT_TORAL_CAP,
};
pub use theta::{character_space, theta, theta_image_dimension, Character};
pub use torus::{diagonal_derivation, diagonal_torus, Torus};

use crate::linalg::{FieldSpec, Scalar, SparseVec};
use crate::presentation::FiniteDimAlgebra;

/// A linear endomorphism of `A` in the algebra basis; column `j` is `f(b_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    cols: Vec<SparseVec>,
}

impl Endo {
    pub fn zero(dim: usize) -> Self {
        Endo { cols: vec![SparseVec::new(); dim] }
    }

    pub fn identity(dim: usize, field: FieldSpec) -> Self {
        Endo { cols: (0..dim).map(|i| SparseVec::unit(i, field.one())).collect() }
    }

    pub fn from_columns(cols: Vec<SparseVec>) -> Self {
        Endo { cols }
    }

    pub fn diagonal(values: &[Scalar]) -> Self {
        Endo { cols: values.iter().enumerate().map(|(i, v)| SparseVec::unit(i, v.clone())).collect() }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&Scalar> {
        self.cols[j].get(i)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out.add_scaled(&self.cols[j], c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endo) -> Endo {
        Endo { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Endo {
        let mut out = self.clone();
        for _ in 1..n {
            out = out.compose(self);
        }
        out
    }

    pub fn add(&self, other: &Endo) -> Endo {
        Endo { cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Endo) -> Endo {
        Endo { cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scaled(&self, c: &Scalar) -> Endo {
        Endo { cols: self.cols.iter().map(|a| a.scaled(c)).collect() }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Endo, c: &Scalar) {
        for (a, b) in self.cols.iter_mut().zip(&other.cols) {
            a.add_scaled(b, c);
        }
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn bracket(&self, other: &Endo) -> Endo {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| c.iter().all(|(i, _)| i == j))
    }

    /// Entry `(i, j)` at position `j * dim + i`.
    pub fn flatten(&self) -> SparseVec {
        let n = self.dim();
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, x)| (j * n + i, x.clone()))).collect()
    }

    pub fn from_flat(dim: usize, v: &SparseVec) -> Endo {
        let mut cols = vec![SparseVec::new(); dim];
        for (k, x) in v.iter() {
            cols[k / dim].add_term(k % dim, x);
        }
        Endo { cols }
    }

    /// `f(b_i b_j) = f(b_i) b_j + b_i f(b_j)` on every pair of basis elements.
    pub fn is_derivation(&self, a: &FiniteDimAlgebra) -> bool {
        let n = a.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = self.apply(a.product(i, j));
                let rhs = a.right_basis_mul(&self.cols[i], j).add(&a.left_basis_mul(i, &self.cols[j]));
                lhs == rhs
            })
        })
    }

    pub fn kills_idempotents(&self, a: &FiniteDimAlgebra) -> bool {
        a.idempotents().iter().all(|&e| self.cols[e].is_zero())
    }
}
