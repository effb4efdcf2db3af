//! Homotopy relations of a bound quiver: minimal relations via circuits, the
//! complex `X_*`, `pi_1(Q, I)^ab` and its character dimension.

pub mod circuits;
pub mod classes;
pub mod complex;

use std::fmt;

pub use circuits::{coordinate_blocks, enumerate_circuits, CircuitSet, DEFAULT_SUPPORT_CAP};
pub use classes::{parallel_classes, relation_subspace, ParallelClass, RelationSubspace};
pub use complex::{build_complex, pi1_abelianization, HomotopyComplex, Pi1Summary};

use crate::error::Result;
use crate::linalg::{AbelianGroup, FieldSpec};
use crate::presentation::Bound;
use crate::quiver::{Path, Quiver};

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A relation subspace with its circuits.
#[derive(Clone, Debug)]
pub struct ClassRelations {
    pub subspace: RelationSubspace,
    pub circuits: CircuitSet,
}

/// Consecutive pairs inside every circuit of size at least two.
pub fn homotopy_pairs(classes: &[ClassRelations]) -> Vec<(Path, Path)> {
    let mut pairs = Vec::new();
    for c in classes {
        let paths = &c.subspace.class.paths;
        for circuit in c.circuits.iter() {
            for w in circuit.windows(2) {
                pairs.push((paths[w[0]].clone(), paths[w[1]].clone()));
            }
        }
    }
    pairs
}

/// Groups of at least two paths identified by the homotopy relation.
pub fn identified_paths(classes: &[ClassRelations]) -> Vec<Vec<Path>> {
    let mut out = Vec::new();
    for c in classes {
        let paths = &c.subspace.class.paths;
        let mut uf = UnionFind::new(paths.len());
        for circuit in c.circuits.iter() {
            for w in circuit.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<Path>> = Default::default();
        for (i, p) in paths.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(p.clone());
        }
        out.extend(groups.into_values().filter(|g| g.len() >= 2));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semimonomial {
    Monomial,
    Semimonomial,
    /// Arrow counts agree modulo `p` within every minimal relation.
    PSemimonomial(u32),
    NotSemimonomial,
}

impl Semimonomial {
    /// Whether the certificate forces `dual_dim = betti` over the given field.
    pub fn certifies_equality(self, k: FieldSpec) -> bool {
        match self {
            Semimonomial::Monomial | Semimonomial::Semimonomial => true,
            Semimonomial::PSemimonomial(p) => k == FieldSpec::Prime(p),
            Semimonomial::NotSemimonomial => false,
        }
    }
}

impl fmt::Display for Semimonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semimonomial::Monomial => write!(f, "monomial"),
            Semimonomial::Semimonomial => write!(f, "semimonomial"),
            Semimonomial::PSemimonomial(p) => write!(f, "{p}-semimonomial"),
            Semimonomial::NotSemimonomial => write!(f, "none"),
        }
    }
}

pub fn semimonomial_check(q: &Quiver, classes: &[ClassRelations], k: FieldSpec) -> Semimonomial {
    let m = q.arrow_count();
    let mut monomial = true;
    let mut exact = true;
    let mut modular = true;
    let p = k.characteristic() as i64;
    for c in classes {
        let paths = &c.subspace.class.paths;
        for circuit in c.circuits.iter() {
            if circuit.len() > 1 {
                monomial = false;
            }
            let first = paths[circuit[0]].arrow_counts(m);
            for &i in &circuit[1..] {
                let counts = paths[i].arrow_counts(m);
                if counts != first {
                    exact = false;
                }
                if p == 0 || counts.iter().zip(&first).any(|(x, y)| (x - y) % p != 0) {
                    modular = false;
                }
            }
        }
    }
    if monomial {
        Semimonomial::Monomial
    } else if exact {
        Semimonomial::Semimonomial
    } else if modular {
        Semimonomial::PSemimonomial(k.characteristic())
    } else {
        Semimonomial::NotSemimonomial
    }
}

#[derive(Clone, Debug)]
pub struct HomotopyResult {
    pub pi1_ab: AbelianGroup,
    pub dual_dim: usize,
    pub classes: Vec<Vec<Path>>,
}

/// Everything computed from one presentation.
#[derive(Clone, Debug)]
pub struct HomotopyAnalysis {
    pub relations: Vec<ClassRelations>,
    pub complex: HomotopyComplex,
    pub result: HomotopyResult,
    pub status: Semimonomial,
}

pub fn analyze(b: &Bound, support_cap: usize) -> Result<HomotopyAnalysis> {
    let mut relations = Vec::new();
    for class in parallel_classes(&b.rewrite) {
        let subspace = relation_subspace(&b.algebra, &b.rewrite, &class)?;
        if subspace.dim() == 0 {
            continue;
        }
        let circuits = enumerate_circuits(&subspace, support_cap)?;
        relations.push(ClassRelations { subspace, circuits });
    }
    let q = &b.presentation.quiver;
    let k = b.presentation.field;
    let complex = build_complex(q, &homotopy_pairs(&relations));
    if !complex.composes_to_zero() {
        return Err(crate::Error::InvariantViolation("delta0 * delta1 != 0".into()));
    }
    let summary = pi1_abelianization(&complex, k);
    let status = semimonomial_check(q, &relations, k);
    let result =
        HomotopyResult { pi1_ab: summary.pi1_ab, dual_dim: summary.dual_dim, classes: identified_paths(&relations) };
    Ok(HomotopyAnalysis { relations, complex, result, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn run(text: &str) -> HomotopyAnalysis {
        let b = parse_presentation(text, None).unwrap().build().unwrap();
        analyze(&b, DEFAULT_SUPPORT_CAP).unwrap()
    }

    #[test]
    fn truncated_loop() {
        let h = run("field GF(3); quiver { v; u: v -> v }; relations { u^3 }");
        assert_eq!(h.result.pi1_ab, AbelianGroup::free(1));
        assert_eq!(h.result.dual_dim, 1);
        assert_eq!(h.status, Semimonomial::Monomial);
        assert!(h.complex.pairs.is_empty());
    }

    #[test]
    fn shifted_loop() {
        let h = run("field GF(3); quiver { v; u: v -> v }; relations { u^3 - e(v) }");
        assert_eq!(h.result.pi1_ab.to_string(), "Z/3");
        assert_eq!(h.result.dual_dim, 1);
        assert_eq!(h.status, Semimonomial::PSemimonomial(3));
    }

    #[test]
    fn exterior_pair() {
        let h = run("quiver { v; a: v -> v; b: v -> v }; relations { a^2; b^2; a*b + b*a }");
        assert_eq!(h.complex.pairs.len(), 1);
        assert_eq!(h.result.pi1_ab, AbelianGroup::free(2));
        assert_eq!(h.status, Semimonomial::Semimonomial);
    }

    #[test]
    fn tree_is_simply_connected() {
        let h = run("quiver { 1 2 3; a: 1 -> 2; b: 2 -> 3 }; relations { a*b }");
        assert!(h.result.pi1_ab.is_trivial());
    }

    #[test]
    fn commutative_square() {
        let h = run("quiver { 1 2 3 4; a: 1 -> 2; b: 2 -> 4; c: 1 -> 3; d: 3 -> 4 }; relations { a*b - c*d }");
        assert!(h.result.pi1_ab.is_trivial());
        assert_eq!(h.result.classes.len(), 1);
        assert_eq!(h.status, Semimonomial::NotSemimonomial);
    }
}
