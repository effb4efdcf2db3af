//! Elements of the path algebra `kQ`: finite linear combinations of paths.

use std::collections::BTreeMap;

use crate::linalg::{FieldSpec, Scalar};
use crate::quiver::{Path, Quiver};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KqElement {
    terms: BTreeMap<Path, Scalar>,
}

impl KqElement {
    pub fn zero() -> Self {
        KqElement { terms: BTreeMap::new() }
    }

    pub fn from_path(p: Path, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(p, &c);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Scalar, Path)>) -> Self {
        let mut x = Self::zero();
        for (c, p) in terms {
            x.add_term(p, &c);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&Scalar> {
        self.terms.get(p)
    }

    /// Largest term in the path order.
    pub fn leading(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn pop_leading(&mut self) -> Option<(Path, Scalar)> {
        self.terms.pop_last()
    }

    pub fn add_term(&mut self, p: Path, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &KqElement, c: &Scalar) {
        for (p, x) in &other.terms {
            self.add_term(p.clone(), &(x * c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> KqElement {
        let mut out = KqElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &KqElement) -> KqElement {
        let mut out = self.clone();
        for (p, x) in &other.terms {
            out.add_term(p.clone(), &-x);
        }
        out
    }

    /// `u * self * v` for paths `u`, `v`; terms whose endpoints do not meet vanish.
    pub fn sandwich(&self, u: &Path, v: &Path) -> KqElement {
        let mut out = KqElement::zero();
        for (p, c) in &self.terms {
            if let Some(q) = u.concat(p).and_then(|x| x.concat(v)) {
                out.add_term(q, c);
            }
        }
        out
    }

    /// `self * other` in `kQ`.
    pub fn mul(&self, other: &KqElement) -> KqElement {
        let mut out = KqElement::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(r) = p.concat(q) {
                    out.add_term(r, &(a * b));
                }
            }
        }
        out
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    /// Common `(source, target)` of all terms, or `None` if empty or not parallel.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        if it.all(|p| p.is_parallel(first)) {
            Some((first.source, first.target))
        } else {
            None
        }
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let label = q.path_label(p);
            let neg = matches!(c, Scalar::Rat(r) if r < &num_rational::BigRational::from_integer(0.into()));
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag.is_one() {
                s.push_str(&label);
            } else {
                s.push_str(&format!("{mag}*{label}"));
            }
        }
        s
    }

    pub fn field(&self) -> Option<FieldSpec> {
        self.terms.values().next().map(Scalar::field)
    }
}
