//! Parallel classes of paths and the relation subspaces `I ∩ e_s kQ e_t`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, SparseVec};
use crate::presentation::{FiniteDimAlgebra, KqElement, RewriteSystem};
use crate::quiver::Path;

/// Paths sharing a source and a target, in path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelClass {
    pub source: usize,
    pub target: usize,
    pub paths: Vec<Path>,
}

/// Rows span the relations among `class.paths`; reduced echelon form.
#[derive(Clone, Debug)]
pub struct RelationSubspace {
    pub class: ParallelClass,
    pub basis: FieldMatrix,
}

impl RelationSubspace {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn relation(&self, row: usize) -> KqElement {
        KqElement::from_terms(
            self.basis
                .row(row)
                .iter()
                .zip(&self.class.paths)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, p)| (c.clone(), p.clone())),
        )
    }
}

/// Every path of length at most `D` that is not already zero because a proper
/// prefix is, grouped by endpoints. Trivial paths sit in the loop classes.
pub fn parallel_classes(rs: &RewriteSystem) -> Vec<ParallelClass> {
    let q = rs.quiver();
    let one = rs.field().one();
    let bound = rs.degree_bound();
    let mut groups: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for v in 0..q.vertex_count() {
        let start = Path::trivial(v);
        let mut stack = vec![(start.clone(), KqElement::from_path(start, one.clone()))];
        while let Some((p, nf)) = stack.pop() {
            groups.entry((p.source, p.target)).or_default().push(p.clone());
            if nf.is_zero() || p.len() == bound {
                continue;
            }
            for a in q.out_arrows(p.target) {
                let next = p.concat(&q.arrow_path(a)).expect("arrow leaves target");
                let next_nf = rs.extend_by_arrows(nf.clone(), &[a]);
                stack.push((next, next_nf));
            }
        }
    }
    groups
        .into_iter()
        .map(|((source, target), mut paths)| {
            paths.sort();
            ParallelClass { source, target, paths }
        })
        .collect()
}

/// Kernel of the evaluation `span(class.paths) -> A`.
pub fn relation_subspace(a: &FiniteDimAlgebra, rs: &RewriteSystem, class: &ParallelClass) -> Result<RelationSubspace> {
    let block = a.peirce_block(class.source, class.target);
    let position: BTreeMap<usize, usize> = block.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let field = a.field();
    let n = class.paths.len();
    let mut eval = FieldMatrix::zeros(field, block.len(), n);
    for (j, p) in class.paths.iter().enumerate() {
        let nf = rs.normal_form(&KqElement::from_path(p.clone(), field.one()))?;
        let v: SparseVec = a.element_to_vec(&nf)?;
        for (i, c) in v.iter() {
            let row = *position
                .get(&i)
                .ok_or_else(|| Error::InvariantViolation("normal form left its Peirce block".into()))?;
            eval.set(row, j, c.clone());
        }
    }
    let kernel = eval.kernel_basis();
    let basis = FieldMatrix::from_rows(field, n, kernel).row_space();
    Ok(RelationSubspace { class: class.clone(), basis })
}
