//! Bundled presentations with known invariants.

use super::{run_presentations, InvariantReport, Options};
use crate::linalg::FieldSpec;

#[derive(Clone, Copy, Debug)]
pub struct ExpectedRow {
    pub presentation: &'static str,
    pub pi1: &'static str,
    pub dual_dim: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusCase {
    pub id: &'static str,
    /// Overrides the field written in the files.
    pub field: Option<FieldSpec>,
    pub presentations: &'static [(&'static str, &'static str)],
    pub rows: &'static [ExpectedRow],
    pub hh1_dim: Option<usize>,
    pub mt_rank: Option<&'static str>,
    /// A published value for `pi_1` that the computation does not reproduce.
    pub published_pi1: Option<&'static str>,
}

macro_rules! bqv {
    ($name:literal) => {
        ($name, include_str!(concat!("../../corpus/", $name, ".bqv")))
    };
}

const fn row(presentation: &'static str, pi1: &'static str, dual_dim: usize) -> ExpectedRow {
    ExpectedRow { presentation, pi1, dual_dim }
}

const GF2: Option<FieldSpec> = Some(FieldSpec::Prime(2));
const GF5: Option<FieldSpec> = Some(FieldSpec::Prime(5));

const fn case(
    id: &'static str,
    field: Option<FieldSpec>,
    presentations: &'static [(&'static str, &'static str)],
    rows: &'static [ExpectedRow],
    hh1_dim: Option<usize>,
    mt_rank: Option<&'static str>,
) -> CorpusCase {
    CorpusCase { id, field, presentations, rows, hh1_dim, mt_rank, published_pi1: None }
}

static CASES: &[CorpusCase] = &[
    case("a2", None, &[bqv!("a2_path")], &[row("a2_path", "0", 0)], Some(0), Some("0")),
    case("a3-zero-path", None, &[bqv!("a3_zero_path")], &[row("a3_zero_path", "0", 0)], Some(0), Some("0")),
    case("kronecker", None, &[bqv!("kronecker")], &[row("kronecker", "Z", 1)], Some(3), Some("1")),
    case(
        "dual-numbers",
        None,
        &[bqv!("dual_numbers"), bqv!("dual_numbers_redundant")],
        &[row("dual_numbers", "Z", 1), row("dual_numbers_redundant", "Z", 1)],
        Some(1),
        Some("1"),
    ),
    case(
        "truncated-p2",
        None,
        &[bqv!("jw_p2_x"), bqv!("jw_p2_x_plus_1")],
        &[row("jw_p2_x", "Z", 1), row("jw_p2_x_plus_1", "Z/2", 1)],
        Some(2),
        Some("1"),
    ),
    case(
        "truncated-p3",
        None,
        &[bqv!("jw_p3_x"), bqv!("jw_p3_x_plus_1")],
        &[row("jw_p3_x", "Z", 1), row("jw_p3_x_plus_1", "Z/3", 1)],
        Some(3),
        Some("1"),
    ),
    case(
        "truncated-p5",
        None,
        &[bqv!("jw_p5_x"), bqv!("jw_p5_x_plus_1")],
        &[row("jw_p5_x", "Z", 1), row("jw_p5_x_plus_1", "Z/5", 1)],
        Some(5),
        Some("1"),
    ),
    case("kronecker-chain-2", None, &[bqv!("kronecker_a2")], &[row("kronecker_a2", "Z", 1)], None, Some("1..2")),
    case("kronecker-chain-3", None, &[bqv!("kronecker_a3")], &[row("kronecker_a3", "Z", 1)], None, Some("1..3")),
    case("kronecker-chain-4", None, &[bqv!("kronecker_a4")], &[row("kronecker_a4", "Z", 1)], None, Some("1..4")),
    case(
        "kronecker-cycle-2",
        None,
        &[bqv!("kronecker_cycle2")],
        &[row("kronecker_cycle2", "Z^2", 2)],
        None,
        Some("2..4"),
    ),
    case(
        "kronecker-cycle-3",
        None,
        &[bqv!("kronecker_cycle3")],
        &[row("kronecker_cycle3", "Z^2", 2)],
        None,
        Some("2..5"),
    ),
    CorpusCase {
        published_pi1: Some("Z + Z/2"),
        ..case("double-loop", None, &[bqv!("double_loop")], &[row("double_loop", "Z^2", 2)], None, Some("2"))
    },
    CorpusCase {
        published_pi1: Some("Z + Z/2"),
        ..case("double-loop-gf2", GF2, &[bqv!("double_loop")], &[row("double_loop", "Z^2", 2)], Some(8), Some("2"))
    },
    case("beilinson-2", None, &[bqv!("beilinson_2")], &[row("beilinson_2", "Z^2", 2)], Some(8), Some("2..4")),
    case("beilinson-3", None, &[bqv!("beilinson_3")], &[row("beilinson_3", "Z^3", 3)], Some(15), Some("3..9")),
    case("qci-22-minus1", None, &[bqv!("qci_22_qminus1")], &[row("qci_22_qminus1", "Z^2", 2)], None, Some("2")),
    case("qci-22-2", None, &[bqv!("qci_22_q2")], &[row("qci_22_q2", "Z^2", 2)], None, Some("2")),
    case("qci-23-minus1", None, &[bqv!("qci_23_qminus1")], &[row("qci_23_qminus1", "Z^2", 2)], None, Some("2")),
    case("qci-23-2", None, &[bqv!("qci_23_q2")], &[row("qci_23_q2", "Z^2", 2)], None, Some("2")),
    case("qci-22-minus1-gf5", GF5, &[bqv!("qci_22_qminus1")], &[row("qci_22_qminus1", "Z^2", 2)], None, Some("2")),
    case("qci-23-2-gf5", GF5, &[bqv!("qci_23_q2")], &[row("qci_23_q2", "Z^2", 2)], None, Some("2")),
    case(
        "elementary-abelian-p2",
        None,
        &[bqv!("elementary_abelian_p2")],
        &[row("elementary_abelian_p2", "Z^2", 2)],
        Some(8),
        Some("2"),
    ),
    case(
        "elementary-abelian-p3",
        None,
        &[bqv!("elementary_abelian_p3")],
        &[row("elementary_abelian_p3", "Z^2", 2)],
        Some(18),
        Some("2"),
    ),
    case(
        "two-loops-square-zero",
        None,
        &[bqv!("two_loops_monomial")],
        &[row("two_loops_monomial", "Z^2", 2)],
        Some(4),
        Some("2"),
    ),
];

pub fn corpus_cases() -> &'static [CorpusCase] {
    CASES
}

#[derive(Clone, Debug)]
pub struct CorpusOutcome {
    pub id: &'static str,
    pub report: Option<InvariantReport>,
    /// Failed checks, empty on success.
    pub failures: Vec<String>,
    /// Set when a published value differs from the computed one.
    pub discrepancy: Option<String>,
}

impl CorpusOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn line(&self) -> String {
        let mut s = format!("{}\t{}", self.id, if self.passed() { "ok" } else { "FAIL" });
        if let Some(r) = &self.report {
            s.push_str(&format!("\thh1={}", r.hh1_dim));
            if let Some(m) = r.mt {
                s.push_str(&format!("\tmt={m}"));
            }
        }
        for f in &self.failures {
            s.push_str(&format!("\t{f}"));
        }
        if let Some(d) = &self.discrepancy {
            s.push_str(&format!("\t{d}"));
        }
        s
    }
}

pub fn run_case(case: &CorpusCase, opts: &Options) -> CorpusOutcome {
    let opts = Options { field: case.field, ..*opts };
    let sources: Vec<(String, String)> =
        case.presentations.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
    let report = match run_presentations(case.id, &sources, &opts) {
        Ok(r) => r,
        Err(e) => {
            return CorpusOutcome {
                id: case.id,
                report: None,
                failures: vec![format!("error: {e}")],
                discrepancy: None,
            }
        }
    };
    let mut failures = Vec::new();
    for exp in case.rows {
        match report.rows.iter().find(|r| r.name == exp.presentation) {
            None => failures.push(format!("{}: missing", exp.presentation)),
            Some(r) => {
                if r.pi1_ab.to_string() != exp.pi1 {
                    failures.push(format!("{}: pi1 {} expected {}", r.name, r.pi1_ab, exp.pi1));
                }
                if r.dual_dim != exp.dual_dim {
                    failures.push(format!("{}: dual {} expected {}", r.name, r.dual_dim, exp.dual_dim));
                }
            }
        }
    }
    if let Some(h) = case.hh1_dim {
        if report.hh1_dim != h {
            failures.push(format!("hh1 {} expected {h}", report.hh1_dim));
        }
    }
    if let Some(m) = case.mt_rank {
        let got = report.mt.map(|x| x.to_string()).unwrap_or_else(|| "unavailable".into());
        if got != m {
            failures.push(format!("mt {got} expected {m}"));
        }
    }
    let discrepancy = case.published_pi1.and_then(|published| {
        let computed = report.rows[0].pi1_ab.to_string();
        (computed != published).then(|| format!("published-discrepant: published {published}, computed {computed}"))
    });
    CorpusOutcome { id: case.id, report: Some(report), failures, discrepancy }
}

/// Runs every case on its own thread; outcomes come back in corpus order.
pub fn run_corpus(opts: &Options) -> Vec<CorpusOutcome> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = corpus_cases().iter().map(|c| scope.spawn(move || run_case(c, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("corpus worker panicked")).collect()
    })
}
