//! End-to-end runs: load presentations, compute every invariant, cross-check.

pub mod corpus;
pub mod report;

pub use corpus::{corpus_cases, run_corpus, CorpusCase, CorpusOutcome, ExpectedRow};
pub use report::{InvariantReport, MtRank};

use crate::error::{Error, Result};
use crate::hochschild::{
    der0_from_presentation, derivation_space, diagonal_torus, hh1_from_der0, nilpotency_report_with,
    theta_image_dimension, Flavor, NilpotencyReport, Torus, DEFAULT_TORAL_CAP, HH1,
};
use crate::homotopy::{analyze, HomotopyAnalysis, Semimonomial, DEFAULT_SUPPORT_CAP};
use crate::linalg::{AbelianGroup, EchelonBasis, FieldSpec};
use crate::presentation::{minimality_check, parse_presentation, Bound, FiniteDimAlgebra, Minimality};
use crate::quiver::{betti_number, spanning_walk_system};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub degree_bound: Option<usize>,
    pub support_cap: usize,
    pub toral_cap: u64,
    pub field: Option<FieldSpec>,
}

impl Default for Options {
    fn default() -> Self {
        Options { degree_bound: None, support_cap: DEFAULT_SUPPORT_CAP, toral_cap: DEFAULT_TORAL_CAP, field: None }
    }
}

/// Parses and builds one `.bqv` presentation.
pub fn load(text: &str, opts: &Options) -> Result<Bound> {
    let mut p = parse_presentation(text, opts.field)?;
    if let Some(d) = opts.degree_bound {
        p = p.with_degree_bound(d)?;
    }
    p.build()
}

/// Invariants of one presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationRow {
    pub name: String,
    pub betti: usize,
    pub pi1_ab: AbelianGroup,
    pub dual_dim: usize,
    pub torus_dim: usize,
    pub theta_dim: usize,
    pub status: Semimonomial,
    pub minimality: Minimality,
    pub admissible: bool,
    pub hh1_dim: usize,
}

impl PresentationRow {
    /// `dual_dim = torus_dim = theta_dim`.
    pub fn three_way_equal(&self) -> bool {
        self.dual_dim == self.torus_dim && self.torus_dim == self.theta_dim
    }
}

/// A row together with the objects it was read off from.
#[derive(Clone, Debug)]
pub struct PresentationAnalysis {
    pub bound: Bound,
    pub homotopy: HomotopyAnalysis,
    pub hh1: HH1,
    pub torus: Torus,
    pub row: PresentationRow,
}

pub fn analyze_presentation(name: &str, b: Bound, opts: &Options) -> Result<PresentationAnalysis> {
    let q = &b.presentation.quiver;
    let homotopy = analyze(&b, opts.support_cap)?;
    let hh1 = hh1_from_der0(&b.algebra, der0_from_presentation(&b)?)?;
    let torus = diagonal_torus(&b, &hh1)?;
    let w = spanning_walk_system(q);
    let theta_dim = theta_image_dimension(&b, &w, &homotopy.complex, &hh1)?;
    let betti = betti_number(q);
    if homotopy.result.dual_dim > betti {
        return Err(Error::InvariantViolation(format!(
            "{name}: dual dimension {} exceeds the first Betti number {betti}",
            homotopy.result.dual_dim
        )));
    }
    let row = PresentationRow {
        name: name.to_string(),
        betti,
        pi1_ab: homotopy.result.pi1_ab.clone(),
        dual_dim: homotopy.result.dual_dim,
        torus_dim: torus.dim(),
        theta_dim,
        status: homotopy.status,
        minimality: minimality_check(&b.presentation, &b.algebra),
        admissible: b.presentation.is_admissible(&b.algebra),
        hh1_dim: hh1.dim(),
    };
    Ok(PresentationAnalysis { bound: b, homotopy, hh1, torus, row })
}

/// Isomorphism-invariant summary used to check that presentations agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub vertices: usize,
    pub cartan: Vec<usize>,
    pub center_dim: usize,
    pub commutator_dim: usize,
}

pub fn fingerprint(a: &FiniteDimAlgebra) -> Fingerprint {
    let mut cartan: Vec<usize> = a.cartan_matrix().into_iter().flatten().collect();
    cartan.sort_unstable();
    let center_dim = a.dim() - derivation_space(a, Flavor::Inn).dim();
    let mut span = EchelonBasis::new(a.field());
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            span.insert(&a.product(i, j).sub(a.product(j, i)));
        }
    }
    Fingerprint { dim: a.dim(), vertices: a.vertex_count(), cartan, center_dim, commutator_dim: span.rank() }
}

/// Compares a structure-constant table against a presentation.
pub fn check_table(name: &str, table: &FiniteDimAlgebra, b: &Bound) -> Result<()> {
    let a = &b.algebra;
    if table.field() != a.field() {
        return Err(Error::PresentationsDisagree(format!(
            "{name} is over {}, presentation over {}",
            table.field(),
            a.field()
        )));
    }
    let (f0, f) = (fingerprint(a), fingerprint(table));
    if f != f0 {
        return Err(Error::PresentationsDisagree(format!("{name}: {f:?} vs {f0:?}")));
    }
    Ok(())
}

/// Fails when two analyses cannot present the same algebra.
pub fn check_same_algebra(items: &[PresentationAnalysis]) -> Result<()> {
    let Some(first) = items.first() else { return Ok(()) };
    let a0 = &first.bound.algebra;
    let f0 = fingerprint(a0);
    for other in &items[1..] {
        let a = &other.bound.algebra;
        if a.field() != a0.field() {
            return Err(Error::PresentationsDisagree(format!(
                "{} is over {}, {} over {}",
                first.row.name,
                a0.field(),
                other.row.name,
                a.field()
            )));
        }
        let f = fingerprint(a);
        if f != f0 {
            return Err(Error::PresentationsDisagree(format!(
                "{} and {}: {f0:?} vs {f:?}",
                first.row.name, other.row.name
            )));
        }
        if other.row.hh1_dim != first.row.hh1_dim {
            return Err(Error::PresentationsDisagree(format!(
                "{} and {}: HH1 dimensions {} and {}",
                first.row.name, other.row.name, first.row.hh1_dim, other.row.hh1_dim
            )));
        }
    }
    Ok(())
}

/// Bounds on the maximal diagonal torus rank from the minimal presentations.
pub fn mt_rank_bounds(rows: &[PresentationRow], field: FieldSpec) -> Result<MtRank> {
    let minimal: Vec<&PresentationRow> = rows.iter().filter(|r| r.minimality.is_minimal()).collect();
    if minimal.is_empty() {
        return Err(Error::NoMinimalPresentation);
    }
    let lower = minimal.iter().map(|r| r.dual_dim).max().unwrap_or(0);
    let upper = minimal
        .iter()
        .find(|r| r.admissible)
        .map(|r| r.betti)
        .unwrap_or_else(|| minimal.iter().map(|r| r.betti).min().unwrap_or(0));
    if lower > upper {
        return Err(Error::InvariantViolation(format!("torus rank bounds cross: {lower} > {upper}")));
    }
    let exact = lower == upper || minimal.iter().any(|r| r.status.certifies_equality(field) && r.dual_dim == upper);
    Ok(MtRank { lower, upper, exact })
}

/// The three-way equality on every minimal presentation.
pub fn verify_three_way(rows: &[PresentationRow]) -> Result<()> {
    for r in rows.iter().filter(|r| r.minimality.is_minimal()) {
        if !r.three_way_equal() {
            return Err(Error::InvariantViolation(format!(
                "{}: dual {}, torus {}, theta {} on a minimal presentation",
                r.name, r.dual_dim, r.torus_dim, r.theta_dim
            )));
        }
    }
    Ok(())
}

/// Full report for presentations of one algebra.
pub fn run_presentations(case: &str, sources: &[(String, String)], opts: &Options) -> Result<InvariantReport> {
    if sources.is_empty() {
        return Err(Error::NoPresentation(case.to_string()));
    }
    let items = sources
        .iter()
        .map(|(name, text)| analyze_presentation(name, load(text, opts)?, opts))
        .collect::<Result<Vec<_>>>()?;
    check_same_algebra(&items)?;
    let rows: Vec<PresentationRow> = items.iter().map(|x| x.row.clone()).collect();
    verify_three_way(&rows)?;
    let first = &items[0];
    let field = first.bound.algebra.field();
    let mt = match mt_rank_bounds(&rows, field) {
        Ok(m) => Some(m),
        Err(Error::NoMinimalPresentation) => None,
        Err(e) => return Err(e),
    };
    let known: Vec<_> = items
        .iter()
        .filter(|x| x.bound.algebra.field() == field)
        .take(1)
        .flat_map(|x| x.torus.generators.clone())
        .collect();
    let nilpotency: NilpotencyReport = nilpotency_report_with(&first.hh1, opts.toral_cap, &known)?;
    Ok(InvariantReport {
        case: case.to_string(),
        field,
        dim: first.bound.algebra.dim(),
        vertices: first.bound.algebra.vertex_count(),
        cartan_trace: first.bound.algebra.cartan_trace(),
        hh1_dim: first.hh1.dim(),
        nilpotency,
        mt,
        rows,
    })
}
