//! The complex `Z P -> Z Q1 -> Z Q0` and its first homology.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::{cokernel_group, dual_dimension, smith_normal_form, AbelianGroup, FieldSpec, IntMatrix};
use crate::quiver::{Path, Quiver};

#[derive(Clone, Debug)]
pub struct HomotopyComplex {
    /// `Q0 x Q1`, column `a` is `source(a) - target(a)`.
    pub delta0: IntMatrix,
    /// `Q1 x P`, column `(p, q)` is the arrow-count difference `p̄ - q̄`.
    pub delta1: IntMatrix,
    pub pairs: Vec<(Path, Path)>,
}

pub fn build_complex(q: &Quiver, pairs: &[(Path, Path)]) -> HomotopyComplex {
    let (n, m) = (q.vertex_count(), q.arrow_count());
    let mut delta0 = IntMatrix::zeros(n, m);
    for (i, a) in q.arrows().iter().enumerate() {
        if a.source != a.target {
            delta0.set(a.source, i, BigInt::from(1));
            delta0.set(a.target, i, BigInt::from(-1));
        }
    }
    let columns: Vec<Vec<BigInt>> = pairs
        .iter()
        .map(|(p, r)| p.arrow_counts(m).iter().zip(r.arrow_counts(m)).map(|(x, y)| BigInt::from(x - y)).collect())
        .collect();
    let delta1 = IntMatrix::from_columns(m, &columns);
    HomotopyComplex { delta0, delta1, pairs: pairs.to_vec() }
}

impl HomotopyComplex {
    pub fn composes_to_zero(&self) -> bool {
        self.delta0.mul(&self.delta1).is_zero()
    }

    /// `ker delta0 / im delta1`.
    pub fn first_homology(&self) -> AbelianGroup {
        let m = self.delta0.cols();
        let snf = smith_normal_form(&self.delta0);
        let r = snf.rank();
        let kernel_rank = m - r;
        // Columns r.. of V form a lattice basis of ker delta0; V^-1 gives coordinates.
        let mut columns: Vec<Vec<BigInt>> = Vec::new();
        for c in 0..self.delta1.cols() {
            let col = self.delta1.column(c);
            if col.iter().all(Zero::is_zero) {
                continue;
            }
            let coords = snf.v_inv.apply(&col);
            debug_assert!(coords[..r].iter().all(Zero::is_zero));
            let coords = coords[r..].to_vec();
            if !columns.contains(&coords) {
                columns.push(coords);
            }
        }
        cokernel_group(kernel_rank, &IntMatrix::from_columns(kernel_rank, &columns))
    }
}

/// `pi_1^ab` with its character dimension over `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Summary {
    pub pi1_ab: AbelianGroup,
    pub dual_dim: usize,
}

pub fn pi1_abelianization(c: &HomotopyComplex, k: FieldSpec) -> Pi1Summary {
    let pi1_ab = c.first_homology();
    let dual_dim = dual_dimension(&pi1_ab, k);
    Pi1Summary { pi1_ab, dual_dim }
}
