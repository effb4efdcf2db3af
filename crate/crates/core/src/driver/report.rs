//! Tab-separated report lines.

use std::fmt;

use super::PresentationRow;
use crate::hochschild::NilpotencyReport;
use crate::linalg::FieldSpec;
use crate::presentation::Minimality;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MtRank {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

impl fmt::Display for MtRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.upper)
        } else {
            write!(f, "{}..{}", self.lower, self.upper)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub case: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub vertices: usize,
    pub cartan_trace: usize,
    pub hh1_dim: usize,
    pub nilpotency: NilpotencyReport,
    pub mt: Option<MtRank>,
    pub rows: Vec<PresentationRow>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub(crate) fn minimality_label(m: &Minimality) -> String {
    match m {
        Minimality::Minimal => "yes".into(),
        Minimality::Redundant { arrow } => format!("no(arrow {arrow})"),
    }
}

impl PresentationRow {
    pub fn line(&self) -> String {
        format!(
            "presentation\t{}\tbetti={}\tpi1={}\tdual={}\ttorus={}\ttheta={}\tstatus={}\tminimal={}\tadmissible={}\thh1={}",
            self.name,
            self.betti,
            self.pi1_ab,
            self.dual_dim,
            self.torus_dim,
            self.theta_dim,
            self.status,
            minimality_label(&self.minimality),
            yes_no(self.admissible),
            self.hh1_dim
        )
    }
}

impl InvariantReport {
    /// One line, fields in a fixed order:
    /// `record case field dim hh1 mt_lower mt_upper exact cartan_trace lie_nilpotent p_nilpotent`.
    pub fn record(&self) -> String {
        let (lo, hi, exact) = match self.mt {
            Some(m) => (m.lower.to_string(), m.upper.to_string(), yes_no(m.exact)),
            None => ("-".into(), "-".into(), "-"),
        };
        format!(
            "record\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.case,
            self.field,
            self.dim,
            self.hh1_dim,
            lo,
            hi,
            exact,
            self.cartan_trace,
            yes_no(self.nilpotency.lie_nilpotent),
            self.p_nilpotent_label()
        )
    }

    fn p_nilpotent_label(&self) -> &'static str {
        match self.nilpotency.p_nilpotent_witnessed {
            None => "-",
            Some(b) => yes_no(b),
        }
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case\t{}", self.case)?;
        writeln!(f, "field\t{}", self.field)?;
        writeln!(f, "dim\t{}", self.dim)?;
        writeln!(f, "vertices\t{}", self.vertices)?;
        writeln!(f, "cartan_trace\t{}", self.cartan_trace)?;
        writeln!(f, "hh1_dim\t{}", self.hh1_dim)?;
        match self.nilpotency.class {
            Some(c) => writeln!(f, "lie_nilpotent\tyes\tclass={c}")?,
            None => writeln!(f, "lie_nilpotent\tno")?,
        }
        writeln!(f, "p_nilpotent\t{}", self.p_nilpotent_label())?;
        match self.mt {
            Some(m) => writeln!(f, "mt_rank\t{m}")?,
            None => writeln!(f, "mt_rank\tunavailable")?,
        }
        for r in &self.rows {
            writeln!(f, "{}", r.line())?;
        }
        writeln!(f, "{}", self.record())
    }
}
