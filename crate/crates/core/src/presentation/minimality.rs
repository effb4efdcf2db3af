//! Whether every arrow is needed to generate the algebra.

use super::algebra::FiniteDimAlgebra;
use super::Presentation;
use crate::linalg::{EchelonBasis, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimality {
    Minimal,
    /// The algebra is generated without this arrow.
    Redundant {
        arrow: usize,
    },
}

impl Minimality {
    pub fn is_minimal(&self) -> bool {
        matches!(self, Minimality::Minimal)
    }
}

/// Dimension of the subalgebra generated by `gens` (which should contain a unit).
pub fn generated_dimension(a: &FiniteDimAlgebra, gens: &[SparseVec]) -> usize {
    let mut span = EchelonBasis::new(a.field());
    let mut frontier: Vec<SparseVec> = gens.iter().filter(|g| span.insert(g).is_some()).cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for g in gens {
                let w = a.multiply(v, g);
                if span.insert(&w).is_some() {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    span.rank()
}

/// Tries each arrow, rewritten ones first, then in declaration order.
pub fn minimality_check(p: &Presentation, a: &FiniteDimAlgebra) -> Minimality {
    let n = p.quiver.vertex_count();
    let images = a.arrow_images();
    let one = a.field().one();
    let mut order: Vec<usize> = (0..p.quiver.arrow_count()).collect();
    order.sort_by_key(|&i| a.path_index(&p.quiver.arrow_path(i)).is_some());
    for alpha in order {
        let mut gens: Vec<SparseVec> = (0..n).map(|i| SparseVec::unit(a.idempotents()[i], one.clone())).collect();
        gens.extend(images.iter().enumerate().filter(|&(b, _)| b != alpha).map(|(_, v)| v.clone()));
        if generated_dimension(a, &gens) == a.dim() {
            return Minimality::Redundant { arrow: alpha };
        }
    }
    Minimality::Minimal
}
