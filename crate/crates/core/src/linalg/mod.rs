//! Exact linear algebra over `Q` and `GF(p)`, plus integer Smith normal form.

pub mod field;
pub mod matrix;
pub mod smith;
pub mod sparse;

pub use field::{FieldSpec, Scalar};
pub use matrix::FieldMatrix;
pub use smith::{cokernel_group, dual_dimension, smith_normal_form, AbelianGroup, IntMatrix, SmithForm};
pub use sparse::{sparse_kernel, EchelonBasis, SparseVec};
