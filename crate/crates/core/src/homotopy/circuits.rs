//! Minimal supports of vectors in a relation subspace.
//!
//! A subspace `R ⊆ k^N` is the kernel of any matrix `E` whose rows span `R^⊥`, so
//! the minimal supports of `R` are the circuits of the column matroid of `E`. The
//! coordinates split into connected blocks (unions of row supports of the reduced
//! echelon basis); inside a block, zero columns are singleton circuits, parallel
//! columns give two-element circuits, and larger circuits are found by growing
//! independent sets and testing whether the next column depends on all of them.

use std::collections::{BTreeMap, HashMap};

use super::UnionFind;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, FieldMatrix, Scalar, SparseVec};

use super::classes::RelationSubspace;

pub const DEFAULT_SUPPORT_CAP: usize = 12;
const SEARCH_NODE_LIMIT: usize = 2_000_000;

/// Circuits as sorted coordinate lists, ordered by size then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CircuitSet {
    pub circuits: Vec<Vec<usize>>,
}

impl CircuitSet {
    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.circuits.iter()
    }
}

/// Connected blocks of coordinates: union of row supports.
pub fn coordinate_blocks(basis: &FieldMatrix) -> Vec<Vec<usize>> {
    let n = basis.cols();
    let mut uf = UnionFind::new(n);
    let mut touched = vec![false; n];
    for r in 0..basis.rows() {
        let support: Vec<usize> = (0..n).filter(|&c| !basis.get(r, c).is_zero()).collect();
        for &c in &support {
            touched[c] = true;
        }
        for w in support.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in (0..n).filter(|&c| touched[c]) {
        groups.entry(uf.find(c)).or_default().push(c);
    }
    groups.into_values().collect()
}

/// Scales a column so its first nonzero entry is one.
fn normalized(col: &[Scalar]) -> Vec<Scalar> {
    match col.iter().find(|x| !x.is_zero()) {
        None => col.to_vec(),
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            col.iter().map(|x| x * &inv).collect()
        }
    }
}

pub fn enumerate_circuits(r: &RelationSubspace, support_cap: usize) -> Result<CircuitSet> {
    let mut circuits = Vec::new();
    let field = r.basis.field();
    for block in coordinate_blocks(&r.basis) {
        let sub = r.basis.select_columns(&block);
        let relations = sub.row_space();
        // Rows of `dual` span the orthogonal complement of the block's relations.
        let dual_rows = relations.kernel_basis();
        let k = dual_rows.len();
        let dual = FieldMatrix::from_rows(field, block.len(), dual_rows);
        let columns: Vec<Vec<Scalar>> =
            (0..block.len()).map(|j| (0..k).map(|i| dual.get(i, j).clone()).collect()).collect();

        let mut parallel: HashMap<Vec<Scalar>, Vec<usize>> = HashMap::new();
        let mut reps: Vec<usize> = Vec::new();
        for (j, col) in columns.iter().enumerate() {
            if col.iter().all(Scalar::is_zero) {
                circuits.push(vec![block[j]]);
                continue;
            }
            let key = normalized(col);
            let entry = parallel.entry(key).or_default();
            if entry.is_empty() {
                reps.push(j);
            }
            entry.push(j);
        }
        let mut class_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for members in parallel.values() {
            if members.len() >= 2 && support_cap < 2 {
                return Err(Error::SupportCapExceeded { needed: 2, cap: support_cap });
            }
            for (x, &a) in members.iter().enumerate() {
                for &b in &members[x + 1..] {
                    circuits.push(vec![block[a], block[b]]);
                }
            }
            class_of.insert(members[0], members.clone());
        }

        let largest = (k + 1).min(reps.len());
        if largest < 3 {
            continue;
        }
        if largest > support_cap {
            return Err(Error::SupportCapExceeded { needed: largest, cap: support_cap });
        }
        let vecs: Vec<SparseVec> = reps.iter().map(|&j| SparseVec::from_dense(&columns[j])).collect();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut nodes = 0usize;
        grow(&vecs, &mut Vec::new(), &EchelonBasis::new(field), largest, &mut found, &mut nodes)?;
        for simple in found {
            // Substitute every parallel member for each representative.
            let mut expanded: Vec<Vec<usize>> = vec![Vec::new()];
            for &i in &simple {
                let members = &class_of[&reps[i]];
                expanded = expanded
                    .into_iter()
                    .flat_map(|prefix| {
                        members.iter().map(move |&m| {
                            let mut c = prefix.clone();
                            c.push(m);
                            c
                        })
                    })
                    .collect();
            }
            for c in expanded {
                let mut c: Vec<usize> = c.into_iter().map(|j| block[j]).collect();
                c.sort_unstable();
                circuits.push(c);
            }
        }
    }
    circuits.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(CircuitSet { circuits })
}

/// Depth-first search over independent sets of representatives, in increasing
/// index order. `I ∪ {j}` is a circuit exactly when `j` lies in the span of `I`
/// with every coefficient nonzero.
fn grow(
    vecs: &[SparseVec],
    current: &mut Vec<usize>,
    echelon: &EchelonBasis,
    largest: usize,
    found: &mut Vec<Vec<usize>>,
    nodes: &mut usize,
) -> Result<()> {
    *nodes += 1;
    if *nodes > SEARCH_NODE_LIMIT {
        return Err(Error::SearchSpaceTooLarge(format!(
            "circuit search exceeded {SEARCH_NODE_LIMIT} independent sets"
        )));
    }
    let start = current.last().map_or(0, |&l| l + 1);
    for j in start..vecs.len() {
        let (residual, coeffs) = echelon.reduce(&vecs[j]);
        if residual.is_zero() {
            if current.len() >= 2 && coeffs.len() == current.len() {
                let mut c = current.clone();
                c.push(j);
                found.push(c);
            }
        } else if current.len() + 2 <= largest {
            let mut next = echelon.clone();
            next.insert(&vecs[j]);
            current.push(j);
            grow(vecs, current, &next, largest, found, nodes)?;
            current.pop();
        }
    }
    Ok(())
}
