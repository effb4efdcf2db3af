use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quiverhh::driver::{self, analyze_presentation, run_corpus, run_presentations, Options};
use quiverhh::hochschild::{nilpotency_report_with, theta, theta::theta_coset, Character, DEFAULT_TORAL_CAP, HH1};
use quiverhh::homotopy::{analyze, DEFAULT_SUPPORT_CAP};
use quiverhh::linalg::{FieldSpec, SparseVec};
use quiverhh::presentation::{ingest_structure_constants, FiniteDimAlgebra};
use quiverhh::quiver::{betti_number, chord_loops, spanning_walk_system};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] quiverhh::Error),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{0} corpus case(s) failed")]
    Corpus(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => e.exit_code() as u8,
            CliError::Read { .. } => 1,
            CliError::Corpus(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "quiverhh", version, about = "Fundamental groups and HH^1 of bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Longest path considered by rewriting and relation enumeration.
    #[arg(long, global = true)]
    degree_bound: Option<usize>,
    /// Largest circuit support enumerated per parallel class.
    #[arg(long, global = true, default_value_t = DEFAULT_SUPPORT_CAP)]
    support_cap: usize,
    /// Largest number of candidates in the toral element search.
    #[arg(long, global = true, default_value_t = DEFAULT_TORAL_CAP)]
    toral_cap: u64,
    /// Ground field, `Q` or `GF(p)`; overrides the file.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldSpec>,
}

#[derive(Subcommand)]
enum Command {
    /// First Betti number of the quiver.
    Betti { file: PathBuf },
    /// Abelianized fundamental group and its character space.
    Pi1 {
        file: PathBuf,
        /// Print the boundary matrices.
        #[arg(long)]
        complex: bool,
    },
    /// First Hochschild cohomology.
    Hh1 {
        file: PathBuf,
        /// Print the bracket table.
        #[arg(long)]
        bracket: bool,
        /// Print the p-power map (characteristic p only).
        #[arg(long)]
        ppower: bool,
    },
    /// Diagonal torus of the presentation.
    Torus { file: PathBuf },
    /// Image of a character, given as `chord=value,...`.
    Theta {
        file: PathBuf,
        #[arg(long)]
        character: String,
    },
    /// Cross-check presentations of one algebra; `.alg` tables are compared too.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Run the bundled corpus.
    Corpus,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: quiverhh::Error| e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn name_of(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn coset(v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| if c.is_one() { format!("x{i}") } else { format!("{c}*x{i}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn on_arrows(a: &FiniteDimAlgebra, f: &quiverhh::hochschild::Endo, labels: &[String]) -> String {
    a.arrow_images()
        .iter()
        .zip(labels)
        .map(|(img, l)| format!("{l} -> {}", a.format_vec(&f.apply(img))))
        .collect::<Vec<_>>()
        .join(", ")
}

fn nilpotency_lines(out: &mut String, h: &HH1, toral_cap: u64, known: &[SparseVec]) -> Result<(), CliError> {
    let n = nilpotency_report_with(h, toral_cap, known)?;
    match n.class {
        Some(c) => writeln!(out, "lie_nilpotent\tyes\tclass={c}").unwrap(),
        None => writeln!(out, "lie_nilpotent\tno").unwrap(),
    }
    let p = match n.p_nilpotent_witnessed {
        None => "-",
        Some(true) => "yes",
        Some(false) => "no",
    };
    writeln!(out, "p_nilpotent\t{p}").unwrap();
    Ok(())
}

fn run(cli: Cli) -> Result<String, CliError> {
    let opts = Options {
        degree_bound: cli.degree_bound,
        support_cap: cli.support_cap,
        toral_cap: cli.toral_cap,
        field: cli.field,
    };
    let mut out = String::new();
    match cli.command {
        Command::Betti { file } => {
            let b = driver::load(&read(&file)?, &opts)?;
            let q = &b.presentation.quiver;
            writeln!(out, "vertices\t{}", q.vertex_count()).unwrap();
            writeln!(out, "arrows\t{}", q.arrow_count()).unwrap();
            writeln!(out, "components\t{}", q.component_count()).unwrap();
            writeln!(out, "betti\t{}", betti_number(q)).unwrap();
        }
        Command::Pi1 { file, complex } => {
            let b = driver::load(&read(&file)?, &opts)?;
            let q = &b.presentation.quiver;
            let h = analyze(&b, opts.support_cap)?;
            writeln!(out, "field\t{}", b.presentation.field).unwrap();
            writeln!(out, "betti\t{}", betti_number(q)).unwrap();
            writeln!(out, "pi1\t{}", h.result.pi1_ab).unwrap();
            writeln!(out, "dual_dim\t{}", h.result.dual_dim).unwrap();
            writeln!(out, "status\t{}", h.status).unwrap();
            for (p, r) in &h.complex.pairs {
                writeln!(out, "pair\t{}\t{}", q.path_label(p), q.path_label(r)).unwrap();
            }
            if complex {
                write!(out, "delta0\n{}", h.complex.delta0).unwrap();
                write!(out, "delta1\n{}", h.complex.delta1).unwrap();
            }
        }
        Command::Hh1 { file, bracket, ppower } => {
            let b = driver::load(&read(&file)?, &opts)?;
            let a = &b.algebra;
            let labels: Vec<String> = b.presentation.quiver.arrows().iter().map(|x| x.label.clone()).collect();
            let x = analyze_presentation(&name_of(&file), b.clone(), &opts)?;
            let h = &x.hh1;
            writeln!(out, "field\t{}", a.field()).unwrap();
            writeln!(out, "der0_dim\t{}", h.der0_dim()).unwrap();
            writeln!(out, "inn0_dim\t{}", h.inn0_dim()).unwrap();
            writeln!(out, "hh1_dim\t{}", h.dim()).unwrap();
            for (i, f) in h.representatives().iter().enumerate() {
                writeln!(out, "x{i}\t{}", on_arrows(a, f, &labels)).unwrap();
            }
            nilpotency_lines(&mut out, h, opts.toral_cap, &x.torus.generators)?;
            if bracket {
                for i in 0..h.dim() {
                    for j in i + 1..h.dim() {
                        let c = h.bracket_entry(i, j);
                        if !c.is_zero() {
                            writeln!(out, "bracket\tx{i}\tx{j}\t{}", coset(c)).unwrap();
                        }
                    }
                }
            }
            if ppower {
                for i in 0..h.dim() {
                    writeln!(out, "ppower\tx{i}\t{}", coset(&h.ppower(&h.unit(i))?)).unwrap();
                }
            }
        }
        Command::Torus { file } => {
            let b = driver::load(&read(&file)?, &opts)?;
            let labels: Vec<String> = b.presentation.quiver.arrows().iter().map(|x| x.label.clone()).collect();
            let x = analyze_presentation(&name_of(&file), b, &opts)?;
            writeln!(out, "torus_dim\t{}", x.torus.dim()).unwrap();
            for w in &x.torus.weights {
                let parts: Vec<String> = labels.iter().zip(w).map(|(l, c)| format!("{l}={c}")).collect();
                writeln!(out, "weight\t{}", parts.join(",")).unwrap();
            }
            for g in &x.torus.generators {
                writeln!(out, "generator\t{}", coset(g)).unwrap();
            }
        }
        Command::Theta { file, character } => {
            let b = driver::load(&read(&file)?, &opts)?;
            let q = &b.presentation.quiver;
            let x = analyze_presentation(&name_of(&file), b.clone(), &opts)?;
            let w = spanning_walk_system(q);
            let f = Character::parse(&character, &w, b.algebra.field())?;
            for (k, l) in chord_loops(q, &w).iter().enumerate() {
                writeln!(out, "chord\t{k}\t{}", l.label(q)).unwrap();
            }
            let d = theta(&b, &w, &f, &x.homotopy.complex)?;
            let paths = b.algebra.basis_paths().unwrap_or_default();
            for (i, p) in paths.iter().enumerate() {
                let v = d.column(i).get(i).cloned().unwrap_or_else(|| b.algebra.field().zero());
                writeln!(out, "eigenvalue\t{}\t{v}", q.path_label(p)).unwrap();
            }
            let c = theta_coset(&b, &w, &f, &x.homotopy.complex, &x.hh1)?;
            writeln!(out, "coset\t{}", coset(&c)).unwrap();
        }
        Command::Check { files } => {
            let (tables, files): (Vec<_>, Vec<_>) =
                files.iter().partition(|f| f.extension().is_some_and(|e| e == "alg"));
            if files.is_empty() {
                return Err(quiverhh::Error::NoPresentation("check".into()).into());
            }
            let sources = files.iter().map(|f| Ok((name_of(f), read(f)?))).collect::<Result<Vec<_>, CliError>>()?;
            let report = run_presentations(&sources[0].0, &sources, &opts)?;
            let first = driver::load(&sources[0].1, &opts)?;
            for t in tables {
                let table = ingest_structure_constants(&read(t)?, opts.field)?;
                driver::check_table(&name_of(t), &table, &first)?;
                writeln!(out, "table\t{}\tmatches", name_of(t)).unwrap();
            }
            write!(out, "{report}").unwrap();
        }
        Command::Corpus => {
            let outcomes = run_corpus(&opts);
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            for o in &outcomes {
                writeln!(out, "{}", o.line()).unwrap();
            }
            writeln!(out, "passed\t{}/{}", outcomes.len() - failed, outcomes.len()).unwrap();
            print!("{out}");
            if failed > 0 {
                return Err(CliError::Corpus(failed));
            }
            return Ok(String::new());
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
