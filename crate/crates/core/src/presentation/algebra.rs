//! Finite dimensional algebras by structure constants.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kq::KqElement;
use super::rewrite::RewriteSystem;
use super::Presentation;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, FieldSpec, Scalar, SparseVec};
use crate::quiver::Path;

/// Full associativity check up to this dimension; sampled above it.
pub const ASSOCIATIVITY_FULL_CHECK_DIM: usize = 64;
pub const ASSOCIATIVITY_SAMPLES: usize = 1000;

/// An algebra with a basis of Peirce-homogeneous elements, the first few of which
/// are a complete set of orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    field: FieldSpec,
    labels: Vec<String>,
    idempotents: Vec<usize>,
    /// `(i, j)` with `e_i b e_j = b`.
    peirce: Vec<(usize, usize)>,
    /// `table[i][j] = b_i * b_j`.
    table: Vec<Vec<SparseVec>>,
    /// Elements generating the algebra, idempotents first.
    generators: Vec<SparseVec>,
    paths: Option<Vec<Path>>,
    path_index: HashMap<Path, usize>,
    arrow_images: Vec<SparseVec>,
}

impl FiniteDimAlgebra {
    /// Validates a structure-constant table: idempotents orthogonal and summing
    /// to one, every basis element Peirce-homogeneous, multiplication associative.
    pub fn from_table(
        field: FieldSpec,
        labels: Vec<String>,
        idempotents: Vec<usize>,
        table: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let dim = labels.len();
        assert_eq!(table.len(), dim);
        let one = field.one();
        for (a, &i) in idempotents.iter().enumerate() {
            if i >= dim {
                return Err(Error::IdempotentAxioms(format!("idempotent index {i} out of range")));
            }
            for (b, &j) in idempotents.iter().enumerate() {
                let expect = if a == b { SparseVec::unit(i, one.clone()) } else { SparseVec::new() };
                if table[i][j] != expect {
                    return Err(Error::IdempotentAxioms(format!(
                        "e{a} * e{b} is not {}",
                        if a == b { "e" } else { "0" }
                    )));
                }
            }
        }
        let mut peirce = Vec::with_capacity(dim);
        for b in 0..dim {
            let unit = SparseVec::unit(b, one.clone());
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            let mut found = None;
            for (s, &es) in idempotents.iter().enumerate() {
                let l = &table[es][b];
                left = left.add(l);
                for (t, &et) in idempotents.iter().enumerate() {
                    let r = &table[b][et];
                    if s == 0 {
                        right = right.add(r);
                    }
                    if *l == unit && *r == unit {
                        found = Some((s, t));
                    }
                }
            }
            if left != unit || right != unit {
                return Err(Error::IdempotentAxioms(format!("sum of idempotents is not a unit on basis element {b}")));
            }
            match found {
                Some(st) => peirce.push(st),
                None => return Err(Error::IdempotentAxioms(format!("basis element {b} is not in a single e_i A e_j"))),
            }
        }
        let generators = (0..dim).map(|i| SparseVec::unit(i, one.clone())).collect();
        let a = FiniteDimAlgebra {
            field,
            labels,
            idempotents,
            peirce,
            table,
            generators,
            paths: None,
            path_index: HashMap::new(),
            arrow_images: Vec::new(),
        };
        if let Err((i, j, k)) = a.check_associativity() {
            return Err(Error::NonAssociative(i, j, k));
        }
        Ok(a)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn peirce(&self, b: usize) -> (usize, usize) {
        self.peirce[b]
    }

    /// Basis indices lying in `e_i A e_j`.
    pub fn peirce_block(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.peirce[b] == (i, j)).collect()
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn generators(&self) -> &[SparseVec] {
        &self.generators
    }

    /// The path of each basis element, when the algebra came from a presentation.
    pub fn basis_paths(&self) -> Option<&[Path]> {
        self.paths.as_deref()
    }

    pub fn path_index(&self, p: &Path) -> Option<usize> {
        self.path_index.get(p).copied()
    }

    /// Images of the arrows (presentation-built algebras only).
    pub fn arrow_images(&self) -> &[SparseVec] {
        &self.arrow_images
    }

    pub fn unit(&self) -> SparseVec {
        self.idempotents.iter().map(|&i| (i, self.field.one())).collect()
    }

    pub fn multiply(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let p = &self.table[i][j];
                if !p.is_zero() {
                    out.add_scaled(p, &(a * b));
                }
            }
        }
        out
    }

    /// `b_i * y`.
    pub fn left_basis_mul(&self, i: usize, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, b) in y.iter() {
            out.add_scaled(&self.table[i][j], b);
        }
        out
    }

    /// `x * b_j`.
    pub fn right_basis_mul(&self, x: &SparseVec, j: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            out.add_scaled(&self.table[i][j], a);
        }
        out
    }

    /// Full check when `dim <= 64`, otherwise 1000 seeded random triples.
    pub fn check_associativity(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let n = self.dim();
        let check = |i: usize, j: usize, k: usize| {
            let left = self.right_basis_mul(&self.table[i][j], k);
            let right = self.left_basis_mul(i, &self.table[j][k]);
            left == right
        };
        if n <= ASSOCIATIVITY_FULL_CHECK_DIM {
            for i in 0..n {
                for j in 0..n {
                    if self.peirce[i].1 != self.peirce[j].0 {
                        continue;
                    }
                    for k in 0..n {
                        if self.peirce[j].1 != self.peirce[k].0 {
                            continue;
                        }
                        if !check(i, j, k) {
                            return Err((i, j, k));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(i, j, k) {
                    return Err((i, j, k));
                }
            }
        }
        Ok(())
    }

    /// `dim e_i A e_j` for all `i, j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut c = vec![vec![0; n]; n];
        for &(i, j) in &self.peirce {
            c[i][j] += 1;
        }
        c
    }

    /// `sum_i dim e_i A e_i`.
    pub fn cartan_trace(&self) -> usize {
        self.peirce.iter().filter(|(i, j)| i == j).count()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Whether products of arrow images vanish beyond some length.
    pub(crate) fn arrow_ideal_nilpotent(&self) -> bool {
        if self.arrow_images.is_empty() {
            return true;
        }
        let mut layer: Vec<SparseVec> = self.arrow_images.iter().filter(|v| !v.is_zero()).cloned().collect();
        for _ in 0..=self.dim() {
            if layer.is_empty() {
                return true;
            }
            let mut span = EchelonBasis::new(self.field);
            let mut next = Vec::new();
            for v in &layer {
                for g in &self.arrow_images {
                    let w = self.multiply(v, g);
                    if span.insert(&w).is_some() {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        false
    }

    pub fn element_to_vec(&self, x: &KqElement) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (p, c) in x.terms() {
            let i = self
                .path_index(p)
                .ok_or_else(|| Error::InvariantViolation(format!("path {:?} is not a basis element", p.arrows)))?;
            v.add_term(i, c);
        }
        Ok(v)
    }

    pub fn vec_to_element(&self, v: &SparseVec) -> Option<KqElement> {
        let paths = self.paths.as_ref()?;
        Some(KqElement::from_terms(v.iter().map(|(i, c)| (c.clone(), paths[i].clone()))))
    }

    pub fn format_vec(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| if c.is_one() { self.labels[i].clone() } else { format!("{c}*{}", self.labels[i]) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn scalar_vec(&self, i: usize, c: Scalar) -> SparseVec {
        let mut v = SparseVec::new();
        v.add_term(i, &c);
        v
    }
}

/// Basis = irreducible paths; structure constants by rewriting products.
pub fn build_algebra(p: &Presentation, rs: &RewriteSystem) -> Result<FiniteDimAlgebra> {
    let field = p.field;
    let one = field.one();
    let paths: Vec<Path> = rs.irreducible_paths().to_vec();
    let path_index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let dim = paths.len();
    let to_vec = |x: &KqElement| -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (q, c) in x.terms() {
            let i = *path_index
                .get(q)
                .ok_or_else(|| Error::InvariantViolation("normal form left the irreducible basis".into()))?;
            v.add_term(i, c);
        }
        Ok(v)
    };
    let mut table = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..dim {
        let xi = KqElement::from_path(paths[i].clone(), one.clone());
        for j in 0..dim {
            if paths[i].target != paths[j].source {
                continue;
            }
            let xj = KqElement::from_path(paths[j].clone(), one.clone());
            table[i][j] = to_vec(&rs.multiply_normal(&xi, &xj))?;
        }
    }
    let n = p.quiver.vertex_count();
    let idempotents: Vec<usize> = (0..n).collect();
    debug_assert!(paths[..n].iter().all(Path::is_trivial));
    let arrow_images: Vec<SparseVec> = (0..p.quiver.arrow_count())
        .map(|a| to_vec(&rs.path_normal_form(&p.quiver.arrow_path(a))))
        .collect::<Result<_>>()?;
    let mut generators: Vec<SparseVec> = idempotents.iter().map(|&i| SparseVec::unit(i, one.clone())).collect();
    generators.extend(arrow_images.iter().cloned());
    let labels = paths.iter().map(|q| p.quiver.path_label(q)).collect();
    let a = FiniteDimAlgebra {
        field,
        labels,
        idempotents,
        peirce: paths.iter().map(|q| (q.source, q.target)).collect(),
        table,
        generators,
        paths: Some(paths),
        path_index,
        arrow_images,
    };
    if let Err((i, j, k)) = a.check_associativity() {
        return Err(Error::InvariantViolation(format!(
            "rewritten multiplication is not associative on ({}, {}, {}); raise the degree bound",
            a.labels[i], a.labels[j], a.labels[k]
        )));
    }
    for r in &p.relations {
        if !rs.reduce(r).is_zero() {
            return Err(Error::InvariantViolation("a generating relation does not rewrite to zero".into()));
        }
    }
    Ok(a)
}
