//! Derivation spaces by linear solves.

use std::collections::BTreeMap;

use super::Endo;
use crate::error::Result;
use crate::linalg::{sparse_kernel, EchelonBasis, Scalar, SparseVec};
use crate::presentation::{Bound, FiniteDimAlgebra};
use crate::quiver::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Der,
    /// Derivations vanishing on the idempotents.
    Der0,
    Inn,
    /// Inner derivations vanishing on the idempotents.
    Inn0,
}

#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub flavor: Flavor,
    pub basis: Vec<Endo>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `[c, -]`.
pub fn inner_derivation(a: &FiniteDimAlgebra, c: &SparseVec) -> Endo {
    Endo::from_columns(
        (0..a.dim())
            .map(|j| {
                let b = SparseVec::unit(j, a.field().one());
                a.multiply(c, &b).sub(&a.multiply(&b, c))
            })
            .collect(),
    )
}

/// Linearly independent subfamily, keeping the first occurrence.
pub(crate) fn independent(a: &FiniteDimAlgebra, family: impl IntoIterator<Item = Endo>) -> Vec<Endo> {
    let mut span = EchelonBasis::new(a.field());
    family.into_iter().filter(|f| span.insert(&f.flatten()).is_some()).collect()
}

pub fn derivation_space(a: &FiniteDimAlgebra, flavor: Flavor) -> DerivationSpace {
    let one = a.field().one();
    let basis = match flavor {
        Flavor::Der0 => der0_leibniz(a),
        Flavor::Inn => independent(a, (0..a.dim()).map(|c| inner_derivation(a, &SparseVec::unit(c, one.clone())))),
        Flavor::Inn0 => independent(
            a,
            (0..a.dim())
                .filter(|&c| {
                    let (s, t) = a.peirce(c);
                    s == t
                })
                .map(|c| inner_derivation(a, &SparseVec::unit(c, one.clone()))),
        ),
        Flavor::Der => {
            let inner = (0..a.dim()).map(|c| inner_derivation(a, &SparseVec::unit(c, one.clone())));
            independent(a, der0_leibniz(a).into_iter().chain(inner))
        }
    };
    DerivationSpace { flavor, basis }
}

/// Linear forms in unknowns, one per output coordinate.
type Symbolic = BTreeMap<usize, SparseVec>;

fn add_symbolic(target: &mut Symbolic, coord: usize, unknown: usize, c: &Scalar) {
    target.entry(coord).or_default().add_term(unknown, c);
}

/// Solves Leibniz against the algebra generators with `f(e_i) = 0`. Such an `f`
/// preserves every Peirce block, so only block-internal unknowns are used.
fn der0_leibniz(a: &FiniteDimAlgebra) -> Vec<Endo> {
    let n = a.dim();
    let field = a.field();
    let is_idem: Vec<bool> = (0..n).map(|j| a.idempotents().contains(&j)).collect();
    // unknowns[j] lists (unknown index, output coordinate) for f(b_j).
    let mut unknowns: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut count = 0;
    for j in (0..n).filter(|&j| !is_idem[j]) {
        let (s, t) = a.peirce(j);
        for i in a.peirce_block(s, t) {
            unknowns[j].push((count, i));
            count += 1;
        }
    }
    let mut rows = Vec::new();
    for x in 0..n {
        for g in a.generators() {
            let mut eq: Symbolic = BTreeMap::new();
            // f(b_x g)
            let xg = {
                let mut v = SparseVec::new();
                for (l, gl) in g.iter() {
                    v.add_scaled(a.product(x, l), gl);
                }
                v
            };
            for (k, c) in xg.iter() {
                for &(u, o) in &unknowns[k] {
                    add_symbolic(&mut eq, o, u, c);
                }
            }
            // - f(b_x) g
            for &(u, i) in &unknowns[x] {
                for (l, gl) in g.iter() {
                    for (o, c) in a.product(i, l).iter() {
                        add_symbolic(&mut eq, o, u, &-(gl * c));
                    }
                }
            }
            // - b_x f(g)
            for (l, gl) in g.iter() {
                for &(u, i) in &unknowns[l] {
                    for (o, c) in a.product(x, i).iter() {
                        add_symbolic(&mut eq, o, u, &-(gl * c));
                    }
                }
            }
            rows.extend(eq.into_values().filter(|r| !r.is_zero()));
        }
    }
    sparse_kernel(field, count, rows)
        .into_iter()
        .map(|sol| {
            let mut cols = vec![SparseVec::new(); n];
            for (j, list) in unknowns.iter().enumerate() {
                for &(u, i) in list {
                    if let Some(c) = sol.get(u) {
                        cols[j].add_term(i, c);
                    }
                }
            }
            Endo::from_columns(cols)
        })
        .collect()
}

/// `Der_0` of a presented algebra from arrow values: a choice of `f(α)` in the
/// Peirce block of each arrow defines a derivation of `kQ`, which descends to
/// `A` exactly when it sends every generating relation into `I`.
pub fn der0_from_presentation(b: &Bound) -> Result<Vec<Endo>> {
    let a = &b.algebra;
    let q = &b.presentation.quiver;
    let rs = &b.rewrite;
    let field = a.field();
    let mut unknowns: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut count = 0;
    for arrow in q.arrows() {
        let mut list = Vec::new();
        for i in a.peirce_block(arrow.source, arrow.target) {
            list.push((count, i));
            count += 1;
        }
        unknowns.push(list);
    }
    let mut cache: BTreeMap<Path, SparseVec> = BTreeMap::new();
    let mut eval = |p: Path| -> Result<SparseVec> {
        if let Some(v) = cache.get(&p) {
            return Ok(v.clone());
        }
        let v = a.element_to_vec(&rs.path_normal_form(&p))?;
        cache.insert(p, v.clone());
        Ok(v)
    };
    let mut rows = Vec::new();
    for r in &b.presentation.relations {
        let mut eq: Symbolic = BTreeMap::new();
        for (p, c) in r.terms() {
            for pos in 0..p.len() {
                let prefix =
                    Path { source: p.source, target: q.arrow(p.arrows[pos]).source, arrows: p.arrows[..pos].to_vec() };
                let suffix = Path {
                    source: q.arrow(p.arrows[pos]).target,
                    target: p.target,
                    arrows: p.arrows[pos + 1..].to_vec(),
                };
                let (pv, sv) = (eval(prefix)?, eval(suffix)?);
                for &(u, i) in &unknowns[p.arrows[pos]] {
                    let term = a.multiply(&a.multiply(&pv, &SparseVec::unit(i, field.one())), &sv);
                    for (o, x) in term.iter() {
                        add_symbolic(&mut eq, o, u, &(c * x));
                    }
                }
            }
        }
        rows.extend(eq.into_values().filter(|r| !r.is_zero()));
    }
    let paths =
        a.basis_paths().ok_or_else(|| crate::Error::NoPresentation("algebra has no path basis".into()))?.to_vec();
    let mut out = Vec::new();
    for sol in sparse_kernel(field, count, rows) {
        let values: Vec<SparseVec> = unknowns
            .iter()
            .map(|list| list.iter().filter_map(|&(u, i)| sol.get(u).map(|c| (i, c.clone()))).collect())
            .collect();
        let mut cols = Vec::with_capacity(paths.len());
        for p in &paths {
            let mut col = SparseVec::new();
            for pos in 0..p.len() {
                let prefix =
                    Path { source: p.source, target: q.arrow(p.arrows[pos]).source, arrows: p.arrows[..pos].to_vec() };
                let suffix = Path {
                    source: q.arrow(p.arrows[pos]).target,
                    target: p.target,
                    arrows: p.arrows[pos + 1..].to_vec(),
                };
                let (pv, sv) = (eval(prefix)?, eval(suffix)?);
                col = col.add(&a.multiply(&a.multiply(&pv, &values[p.arrows[pos]]), &sv));
            }
            cols.push(col);
        }
        out.push(Endo::from_columns(cols));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn bound(text: &str) -> Bound {
        parse_presentation(text, None).unwrap().build().unwrap()
    }

    #[test]
    fn dual_numbers() {
        let b = bound("quiver { v; x: v -> v }; relations { x^2 }");
        let der = derivation_space(&b.algebra, Flavor::Der);
        assert_eq!(der.dim(), 1);
        // x ↦ x, e ↦ 0
        let f = &der.basis[0];
        assert!(f.column(0).is_zero());
        assert_eq!(f.column(1).support(), vec![1]);
        assert_eq!(derivation_space(&b.algebra, Flavor::Inn).dim(), 0);
    }

    #[test]
    fn truncated_polynomials_in_char_p() {
        let b = bound("field GF(3); quiver { v; x: v -> v }; relations { x^3 }");
        assert_eq!(derivation_space(&b.algebra, Flavor::Der).dim(), 3);
        assert_eq!(der0_from_presentation(&b).unwrap().len(), 3);
    }

    #[test]
    fn path_algebra_a2() {
        let b = bound("quiver { 1 2; a: 1 -> 2 }; relations { }");
        let der0 = derivation_space(&b.algebra, Flavor::Der0);
        let inn0 = derivation_space(&b.algebra, Flavor::Inn0);
        assert_eq!(der0.dim(), 1);
        assert_eq!(inn0.dim(), 1);
        assert_eq!(derivation_space(&b.algebra, Flavor::Inn).dim(), 2);
    }

    #[test]
    fn both_solvers_agree() {
        for text in [
            "quiver { v; a: v -> v; b: v -> v }; relations { a^2; b^2; a*b + b*a }",
            "quiver { 0 1 2; x0: 0 -> 1; x1: 0 -> 1; y0: 1 -> 2; y1: 1 -> 2 }; relations { x0*y1 - x1*y0 }",
            "field GF(2); quiver { v; u: v -> v }; relations { u^2 - e(v) }",
        ] {
            let b = bound(text);
            let generic = derivation_space(&b.algebra, Flavor::Der0).basis;
            let arrows = der0_from_presentation(&b).unwrap();
            assert_eq!(generic.len(), arrows.len(), "{text}");
            let mut span = EchelonBasis::new(b.algebra.field());
            for f in &generic {
                span.insert(&f.flatten());
            }
            for f in &arrows {
                assert!(f.is_derivation(&b.algebra));
                assert!(span.contains(&f.flatten()));
            }
        }
    }
}
