//! Degree-bounded noncommutative rewriting for `kQ/I`.
//!
//! Relations are oriented by the degree-lexicographic path order into rules
//! `lead -> tail` and completed by resolving overlaps of leading paths. Overlaps
//! whose combined word is longer than the degree bound `D` are discarded, so the
//! result is a complete system for words of length at most `D`.

use std::collections::HashMap;

use super::kq::KqElement;
use super::Presentation;
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar};
use crate::quiver::{Path, Quiver};

pub const DEFAULT_RULE_BUDGET: usize = 20_000;

/// `lead ≡ tail (mod I)`, every path of `tail` smaller than `lead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Path,
    pub tail: KqElement,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    quiver: Quiver,
    field: FieldSpec,
    rules: Vec<Rule>,
    index: HashMap<Vec<usize>, usize>,
    max_lead: usize,
    degree_bound: usize,
    irreducible: Vec<Path>,
}

impl RewriteSystem {
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// Irreducible paths in path order; trivial paths come first.
    pub fn irreducible_paths(&self) -> &[Path] {
        &self.irreducible
    }

    /// Position and rule index of the leftmost rule lead occurring in `p`.
    fn find_match(&self, p: &Path) -> Option<(usize, usize)> {
        find_match(&self.index, self.max_lead, p)
    }

    pub fn is_irreducible(&self, p: &Path) -> bool {
        self.find_match(p).is_none()
    }

    /// Unique irreducible representative of `x + I`. Paths longer than the degree
    /// bound are rejected.
    pub fn normal_form(&self, x: &KqElement) -> Result<KqElement> {
        if let Some(p) = x.paths().find(|p| p.len() > self.degree_bound) {
            return Err(Error::DegreeOverflow { length: p.len(), bound: self.degree_bound });
        }
        Ok(self.reduce(x))
    }

    /// `x ∈ I`, for elements within the degree bound.
    pub fn is_member(&self, x: &KqElement) -> Result<bool> {
        Ok(self.normal_form(x)?.is_zero())
    }

    pub(crate) fn reduce(&self, x: &KqElement) -> KqElement {
        reduce_with(&self.index, &self.rules, self.max_lead, x)
    }

    /// Normal form of a path of any length, reduced one arrow at a time so that
    /// only words of length at most (longest irreducible path + 1) are rewritten.
    pub fn path_normal_form(&self, p: &Path) -> KqElement {
        let start = KqElement::from_path(Path::trivial(p.source), self.field.one());
        self.extend_by_arrows(start, &p.arrows)
    }

    /// Normal form of `x * y` for elements already in normal form.
    pub fn multiply_normal(&self, x: &KqElement, y: &KqElement) -> KqElement {
        let mut out = KqElement::zero();
        for (q, b) in y.terms() {
            let meets = KqElement::from_terms(
                x.terms().filter(|(p, _)| p.target == q.source).map(|(p, c)| (c.clone(), p.clone())),
            );
            out.add_scaled(&self.extend_by_arrows(meets, &q.arrows), b);
        }
        out
    }

    pub(crate) fn extend_by_arrows(&self, mut acc: KqElement, arrows: &[usize]) -> KqElement {
        for &a in arrows {
            if acc.is_zero() {
                break;
            }
            let step = self.quiver.arrow_path(a);
            let mut next = KqElement::zero();
            for (p, c) in acc.terms() {
                if let Some(r) = p.concat(&step) {
                    next.add_term(r, c);
                }
            }
            acc = self.reduce(&next);
        }
        acc
    }

    /// Checks that every overlap of rule leads within the degree bound resolves.
    pub fn verify_confluence(&self) -> bool {
        for r1 in &self.rules {
            for r2 in &self.rules {
                for s in overlaps(r1, r2, self.degree_bound) {
                    if !self.reduce(&s).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn find_match(index: &HashMap<Vec<usize>, usize>, max_lead: usize, p: &Path) -> Option<(usize, usize)> {
    let n = p.arrows.len();
    for start in 0..n {
        for end in start + 1..=n.min(start + max_lead) {
            if let Some(&r) = index.get(&p.arrows[start..end]) {
                return Some((start, r));
            }
        }
    }
    None
}

fn reduce_with(index: &HashMap<Vec<usize>, usize>, rules: &[Rule], max_lead: usize, x: &KqElement) -> KqElement {
    let mut work = x.clone();
    let mut out = KqElement::zero();
    while let Some((p, c)) = work.pop_leading() {
        match find_match(index, max_lead, &p) {
            None => out.add_term(p, &c),
            Some((start, r)) => {
                let rule = &rules[r];
                let end = start + rule.lead.len();
                for (t, tc) in rule.tail.terms() {
                    let mut arrows = Vec::with_capacity(p.len() - rule.lead.len() + t.len());
                    arrows.extend_from_slice(&p.arrows[..start]);
                    arrows.extend_from_slice(&t.arrows);
                    arrows.extend_from_slice(&p.arrows[end..]);
                    let q = Path { source: p.source, target: p.target, arrows };
                    work.add_term(q, &(&c * tc));
                }
            }
        }
    }
    out
}

fn rule_relation(r: &Rule, one: &Scalar) -> KqElement {
    let mut x = KqElement::from_path(r.lead.clone(), one.clone());
    x.add_scaled(&r.tail, &-one);
    x
}

/// S-elements of proper overlaps `lead1 = X·Y`, `lead2 = Y·Z` with `|XYZ| <= bound`.
fn overlaps(r1: &Rule, r2: &Rule, bound: usize) -> Vec<KqElement> {
    let (l1, l2) = (&r1.lead.arrows, &r2.lead.arrows);
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] != l2[..k] || l1.len() + l2.len() - k > bound {
            continue;
        }
        let x = Path { source: r1.lead.source, target: r2.lead.source, arrows: l1[..l1.len() - k].to_vec() };
        let z = Path { source: r1.lead.target, target: r2.lead.target, arrows: l2[k..].to_vec() };
        let left = r1.tail.sandwich(&Path::trivial(r1.lead.source), &z);
        let right = r2.tail.sandwich(&x, &Path::trivial(r2.lead.target));
        out.push(left.sub(&right));
    }
    out
}

/// Completes the relations of `p` into a rewriting system valid up to the degree
/// bound and enumerates the irreducible paths.
pub fn complete_rewriting(p: &Presentation) -> Result<RewriteSystem> {
    complete_with_budget(p, DEFAULT_RULE_BUDGET)
}

pub fn complete_with_budget(p: &Presentation, budget: usize) -> Result<RewriteSystem> {
    let field = p.field;
    let one = field.one();
    let bound = p.degree_bound;
    let mut rules: Vec<Rule> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut max_lead = 0usize;
    let mut pending: Vec<KqElement> = p.relations.clone();

    while !pending.is_empty() {
        // Smallest leading term first keeps rules short.
        let pick = (0..pending.len())
            .min_by(|&a, &b| pending[a].leading().map(|t| t.0).cmp(&pending[b].leading().map(|t| t.0)))
            .expect("nonempty");
        let r = pending.swap_remove(pick);
        let r = reduce_with(&index, &rules, max_lead, &r);
        let Some((lead, lc)) = r.leading().map(|(a, b)| (a.clone(), b.clone())) else {
            continue;
        };
        if lead.is_trivial() {
            return Err(Error::InvalidPresentation(format!(
                "relations force the trivial path {} into the ideal",
                p.quiver.path_label(&lead)
            )));
        }
        let monic = r.scaled(&lc.inv().expect("nonzero lead"));
        let mut tail = KqElement::from_path(lead.clone(), one.clone()).sub(&monic);
        tail = reduce_with(&index, &rules, max_lead, &tail);
        let new_rule = Rule { lead: lead.clone(), tail };

        // Rules whose lead contains the new lead become reducible: retire them.
        let mut kept = Vec::with_capacity(rules.len() + 1);
        for old in rules.drain(..) {
            if contains_subword(&old.lead.arrows, &lead.arrows) {
                pending.push(rule_relation(&old, &one));
            } else {
                kept.push(old);
            }
        }
        rules = kept;
        rules.push(new_rule);
        if rules.len() > budget {
            return Err(Error::RuleBudget(budget));
        }
        index.clear();
        max_lead = 0;
        for (i, r) in rules.iter().enumerate() {
            index.insert(r.lead.arrows.clone(), i);
            max_lead = max_lead.max(r.lead.len());
        }
        let newest = rules.last().expect("just pushed");
        for other in &rules {
            pending.extend(overlaps(newest, other, bound));
            if !std::ptr::eq(other, newest) {
                pending.extend(overlaps(other, newest, bound));
            }
        }
        pending.retain(|x| !x.is_zero());
    }

    // Tails may still mention leads added after them.
    for i in 0..rules.len() {
        let t = reduce_with(&index, &rules, max_lead, &rules[i].tail);
        rules[i].tail = t;
    }

    let irreducible = enumerate_irreducible(&p.quiver, &index, max_lead, bound)?;
    let rs =
        RewriteSystem { quiver: p.quiver.clone(), field, rules, index, max_lead, degree_bound: bound, irreducible };
    if !rs.verify_confluence() {
        return Err(Error::InvariantViolation("rewriting system not confluent within the degree bound".into()));
    }
    Ok(rs)
}

fn contains_subword(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

fn enumerate_irreducible(
    q: &Quiver,
    index: &HashMap<Vec<usize>, usize>,
    max_lead: usize,
    bound: usize,
) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.out_arrows(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                let cand = Path { source: p.source, target: q.arrow(a).target, arrows };
                // The prefix is irreducible, so only suffixes can match.
                let n = cand.arrows.len();
                let hit = (1..=n.min(max_lead)).any(|k| index.contains_key(&cand.arrows[n - k..]));
                if hit {
                    continue;
                }
                if cand.len() >= bound {
                    return Err(Error::NotFiniteDimensional { bound, witness: q.path_label(&cand) });
                }
                next.push(cand);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::dsl::parse_presentation;

    fn system(text: &str) -> RewriteSystem {
        complete_rewriting(&parse_presentation(text, None).unwrap()).unwrap()
    }

    #[test]
    fn monomial_power() {
        let rs = system("field GF(3); quiver { v; u: v -> v }; relations { u^3 }");
        assert_eq!(rs.rules().len(), 1);
        assert!(rs.rules()[0].tail.is_zero());
        assert_eq!(rs.irreducible_paths().len(), 3);
    }

    #[test]
    fn non_admissible_unit_relation() {
        let rs = system("field GF(3); quiver { v; u: v -> v }; relations { u^3 - 1 }");
        assert_eq!(rs.rules().len(), 1);
        assert_eq!(rs.rules()[0].tail, KqElement::from_path(Path::trivial(0), FieldSpec::Prime(3).one()));
        assert_eq!(rs.irreducible_paths().len(), 3);
    }

    #[test]
    fn quantum_plane_basis() {
        for (m1, m2) in [(2, 2), (2, 3), (3, 4)] {
            let rs = system(&format!(
                "field Q; quiver {{ v; x: v -> v; y: v -> v }}; relations {{ x^{m1}; y^{m2}; x*y - 2*y*x }}"
            ));
            let irr = rs.irreducible_paths();
            assert_eq!(irr.len(), m1 * m2);
            // Every irreducible path is x^a y^b.
            for p in irr {
                assert!(p.arrows.windows(2).all(|w| w[0] <= w[1]), "{:?}", p);
            }
        }
    }

    #[test]
    fn exterior_algebra_normal_forms() {
        let p =
            parse_presentation("quiver { v; a: v -> v; b: v -> v }; relations { a^2; b^2; a*b + b*a }", None).unwrap();
        let rs = complete_rewriting(&p).unwrap();
        assert_eq!(rs.irreducible_paths().len(), 4);
        let aba = KqElement::from_path(p.quiver.path_from_arrows(&[0, 1, 0]).unwrap(), p.field.one());
        assert!(rs.normal_form(&aba).unwrap().is_zero());
        let ba = KqElement::from_path(p.quiver.path_from_arrows(&[1, 0]).unwrap(), p.field.one());
        let ab = KqElement::from_path(p.quiver.path_from_arrows(&[0, 1]).unwrap(), p.field.from_i64(-1));
        assert_eq!(rs.normal_form(&ba).unwrap(), ab);
        let e = KqElement::from_path(Path::trivial(0), p.field.one());
        assert_eq!(rs.normal_form(&e).unwrap(), e);
    }

    #[test]
    fn shifted_power_normal_form() {
        // I = (u^5 - 2^5) over GF(7): u^5 rewrites to 32 = 4.
        let rs = system("field GF(7); quiver { v; u: v -> v }; relations { u^5 - 32 }");
        let u5 = KqElement::from_path(Path { source: 0, target: 0, arrows: vec![0; 5] }, FieldSpec::Prime(7).one());
        assert_eq!(
            rs.normal_form(&u5).unwrap(),
            KqElement::from_path(Path::trivial(0), FieldSpec::Prime(7).from_i64(4))
        );
    }

    #[test]
    fn infinite_dimension_detected() {
        let p = parse_presentation("quiver { v; x: v -> v; y: v -> v }; relations { x*y - y*x }", None).unwrap();
        let err = complete_rewriting(&p).unwrap_err();
        assert!(matches!(err, Error::NotFiniteDimensional { .. }), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn degree_overflow() {
        let rs = system("quiver { v; u: v -> v }; relations { u^2 }");
        let long = KqElement::from_path(Path { source: 0, target: 0, arrows: vec![0; 9] }, FieldSpec::Rationals.one());
        assert!(matches!(rs.normal_form(&long), Err(Error::DegreeOverflow { .. })));
        assert!(rs.path_normal_form(&Path { source: 0, target: 0, arrows: vec![0; 9] }).is_zero());
    }

    #[test]
    fn completion_adds_consequences() {
        // x*y = y*x = 0 style overlaps: (x*y - y) with x^2 forces more rules.
        let rs = system("quiver { v; x: v -> v; y: v -> v }; relations { y*x - x*y; x^2; y^2 - x*y }");
        assert!(rs.verify_confluence());
        // k<x,y>/(yx - xy, x^2, y^2 - xy) has basis e, x, y, xy.
        assert_eq!(rs.irreducible_paths().len(), 4);
    }
}
