//! Bound-quiver presentations `A = kQ/I` and the finite dimensional algebras they
//! present.

pub mod alg_file;
pub mod algebra;
pub mod dsl;
pub mod kq;
pub mod minimality;
pub mod rewrite;

pub use alg_file::ingest_structure_constants;
pub use algebra::{build_algebra, FiniteDimAlgebra};
pub use dsl::parse_presentation;
pub use kq::KqElement;
pub use minimality::{minimality_check, Minimality};
pub use rewrite::{complete_rewriting, RewriteSystem, Rule};

use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::quiver::Quiver;

/// A quiver, a field, and generators of the ideal `I`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub quiver: Quiver,
    pub field: FieldSpec,
    pub relations: Vec<KqElement>,
    /// Rewriting and relation enumeration only look at paths up to this length.
    pub degree_bound: usize,
}

impl Presentation {
    /// Validates the relations. Without an explicit bound, `D` is twice the longest
    /// relation, and at least the vertex count so acyclic path algebras fit.
    pub fn new(
        quiver: Quiver,
        field: FieldSpec,
        relations: Vec<KqElement>,
        degree_bound: Option<usize>,
    ) -> Result<Self> {
        for r in &relations {
            if r.endpoints().is_none() {
                return Err(Error::NonParallel(r.display(&quiver)));
            }
            if r.field().is_some_and(|f| f != field) {
                return Err(Error::InvalidField(format!("relation over {:?}, presentation over {field}", r.field())));
            }
        }
        let longest = relations.iter().map(KqElement::max_len).max().unwrap_or(0);
        let bound = degree_bound.unwrap_or_else(|| default_degree_bound(longest, quiver.vertex_count()));
        if bound < longest {
            return Err(Error::InvalidPresentation(format!(
                "degree bound {bound} is below the longest relation ({longest})"
            )));
        }
        Ok(Presentation { quiver, field, relations, degree_bound: bound })
    }

    pub fn with_degree_bound(mut self, bound: usize) -> Result<Self> {
        let longest = self.relations.iter().map(KqElement::max_len).max().unwrap_or(0);
        if bound < longest {
            return Err(Error::InvalidPresentation(format!(
                "degree bound {bound} is below the longest relation ({longest})"
            )));
        }
        self.degree_bound = bound;
        Ok(self)
    }

    pub fn max_relation_length(&self) -> usize {
        self.relations.iter().map(KqElement::max_len).max().unwrap_or(0)
    }

    /// Rewrites, builds the algebra, and bundles the pieces.
    pub fn build(&self) -> Result<Bound> {
        let rewrite = complete_rewriting(self)?;
        let algebra = build_algebra(self, &rewrite)?;
        Ok(Bound { presentation: self.clone(), rewrite, algebra })
    }

    /// All relation terms have length at least two and the arrow ideal is
    /// nilpotent modulo `I`.
    pub fn is_admissible(&self, a: &FiniteDimAlgebra) -> bool {
        if self.relations.iter().any(|r| r.paths().any(|p| p.len() < 2)) {
            return false;
        }
        a.arrow_ideal_nilpotent()
    }
}

pub fn default_degree_bound(longest_relation: usize, vertices: usize) -> usize {
    (2 * longest_relation).max(vertices).max(2)
}

/// A presentation together with its rewriting system and algebra.
#[derive(Clone, Debug)]
pub struct Bound {
    pub presentation: Presentation,
    pub rewrite: RewriteSystem,
    pub algebra: FiniteDimAlgebra,
}
