//! Parser for `.bqv` bound-quiver presentations.
//!
//! ```text
//! # k[x]/(x^5) over GF(5)
//! field GF(5)
//! quiver { v; u: v -> v }
//! relations { u^5 }
//! ```
//!
//! Statements and block items are separated by `;` or newlines. A relation is a
//! signed sum of terms `coeff * path`, where a path is `a*b*c` (left to right,
//! `a` first), `a^n`, or `e(v)`. A bare coefficient stands for a multiple of the
//! unit and is only allowed on one-vertex quivers.

use num_bigint::BigInt;
use num_traits::One;

use super::kq::KqElement;
use super::Presentation;
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::quiver::{Arrow, Path, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Arrow,
    Newline,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let push = |tok, out: &mut Vec<Token>| out.push(Token { tok, line: line_no, column });
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                push(Tok::Int(s.parse().expect("digits")), &mut out);
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                push(Tok::Ident(chars[start..i].iter().collect()), &mut out);
                continue;
            }
            if c == '-' && chars.get(i + 1) == Some(&'>') {
                push(Tok::Arrow, &mut out);
                i += 2;
                continue;
            }
            if c == '→' {
                push(Tok::Arrow, &mut out);
                i += 1;
                continue;
            }
            if "{}();:*^+-/,".contains(c) {
                push(Tok::Sym(c), &mut out);
                i += 1;
                continue;
            }
            return Err(Error::Parse { line: line_no, column, message: format!("unexpected character `{c}`") });
        }
        out.push(Token { tok: Tok::Newline, line: line_no, column: chars.len() + 1 });
    }
    Ok(out)
}

/// Raw term before the field is known: `(numerator, denominator, factors)`.
struct RawTerm {
    num: BigInt,
    den: BigInt,
    path: Option<Vec<Factor>>,
    line: usize,
    column: usize,
}

enum Factor {
    Arrow { name: String, line: usize, column: usize },
    Idempotent(String),
}

struct RawRelation {
    terms: Vec<RawTerm>,
    line: usize,
    column: usize,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_tok(&self) -> Option<&Tok> {
        self.peek().map(|t| &t.tok)
    }

    fn err_here(&self, message: impl Into<String>) -> Error {
        let (line, column) = match self.peek() {
            Some(t) => (t.line, t.column),
            None => self.toks.last().map_or((1, 1), |t| (t.line, t.column + 1)),
        };
        Error::Parse { line, column, message: message.into() }
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek_tok(), Some(Tok::Newline) | Some(Tok::Sym(';'))) {
            self.pos += 1;
        }
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek_tok(), Some(Tok::Newline)) {
            self.pos += 1;
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        self.skip_newlines();
        match self.peek_tok() {
            Some(Tok::Sym(x)) if *x == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err_here(format!("expected `{c}`"))),
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize)> {
        match self.peek().cloned() {
            Some(Token { tok: Tok::Ident(s), line, column }) => {
                self.pos += 1;
                Ok((s, line, column))
            }
            // Vertices are often numbered.
            Some(Token { tok: Tok::Int(v), line, column }) => {
                self.pos += 1;
                Ok((v.to_string(), line, column))
            }
            _ => Err(self.err_here("expected a name")),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek_tok().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err_here("expected an integer")),
        }
    }
}

#[derive(Default)]
struct Raw {
    field: Option<FieldSpec>,
    vertices: Vec<String>,
    arrows: Vec<(String, String, String, usize, usize)>,
    relations: Vec<RawRelation>,
    quiver_seen: bool,
    bound: Option<usize>,
}

fn parse_field(p: &mut Parser) -> Result<FieldSpec> {
    let (name, line, column) = p.ident()?;
    match name.as_str() {
        "Q" | "QQ" => Ok(FieldSpec::Rationals),
        "GF" | "F" => {
            p.expect_sym('(')?;
            let v = p.int()?;
            p.expect_sym(')')?;
            let prime: u32 =
                v.try_into().map_err(|_| Error::Parse { line, column, message: "characteristic too large".into() })?;
            FieldSpec::prime(prime).map_err(|e| Error::Parse { line, column, message: e.to_string() })
        }
        other => Err(Error::Parse { line, column, message: format!("unknown field `{other}` (use Q or GF(p))") }),
    }
}

fn parse_quiver_block(p: &mut Parser, raw: &mut Raw) -> Result<()> {
    p.expect_sym('{')?;
    loop {
        p.skip_separators();
        match p.peek_tok() {
            Some(Tok::Sym('}')) => {
                p.pos += 1;
                return Ok(());
            }
            None => return Err(p.err_here("unterminated quiver block")),
            _ => {}
        }
        let (first, line, column) = p.ident()?;
        if matches!(p.peek_tok(), Some(Tok::Sym(':'))) {
            p.pos += 1;
            let (src, ..) = p.ident()?;
            match p.next().map(|t| t.tok) {
                Some(Tok::Arrow) => {}
                _ => {
                    p.pos -= 1;
                    return Err(p.err_here("expected `->`"));
                }
            }
            let (tgt, ..) = p.ident()?;
            raw.arrows.push((first, src, tgt, line, column));
        } else {
            raw.vertices.push(first);
            while let Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::Sym(',')) = p.peek_tok() {
                if matches!(p.peek_tok(), Some(Tok::Sym(','))) {
                    p.pos += 1;
                    continue;
                }
                let (v, ..) = p.ident()?;
                raw.vertices.push(v);
            }
        }
    }
}

fn parse_coefficient(p: &mut Parser) -> Result<Option<(BigInt, BigInt)>> {
    if let Some(Tok::Int(n)) = p.peek_tok().cloned() {
        p.pos += 1;
        if matches!(p.peek_tok(), Some(Tok::Sym('/'))) {
            p.pos += 1;
            let d = p.int()?;
            return Ok(Some((n, d)));
        }
        return Ok(Some((n, BigInt::one())));
    }
    Ok(None)
}

fn parse_factor(p: &mut Parser) -> Result<Vec<Factor>> {
    let (name, line, column) = p.ident()?;
    if name == "e" && matches!(p.peek_tok(), Some(Tok::Sym('('))) {
        p.pos += 1;
        let (v, ..) = p.ident()?;
        p.expect_sym(')')?;
        return Ok(vec![Factor::Idempotent(v)]);
    }
    let mut reps = 1usize;
    if matches!(p.peek_tok(), Some(Tok::Sym('^'))) {
        p.pos += 1;
        let n = p.int()?;
        reps = n.try_into().map_err(|_| Error::Parse { line, column, message: "exponent too large".into() })?;
        if reps == 0 {
            return Err(Error::Parse { line, column, message: "zero exponent; write e(v) for a trivial path".into() });
        }
    }
    Ok((0..reps).map(|_| Factor::Arrow { name: name.clone(), line, column }).collect())
}

fn parse_term(p: &mut Parser, sign: bool) -> Result<RawTerm> {
    let (line, column) = p.peek().map_or((0, 0), |t| (t.line, t.column));
    let coeff = parse_coefficient(p)?;
    let mut num_den = coeff.clone().unwrap_or((BigInt::one(), BigInt::one()));
    if sign {
        num_den.0 = -num_den.0;
    }
    let has_path = match p.peek_tok() {
        Some(Tok::Sym('*')) if coeff.is_some() => {
            p.pos += 1;
            true
        }
        Some(Tok::Ident(_)) => true,
        _ => false,
    };
    if !has_path {
        if coeff.is_none() {
            return Err(p.err_here("expected a term"));
        }
        return Ok(RawTerm { num: num_den.0, den: num_den.1, path: None, line, column });
    }
    let mut factors = parse_factor(p)?;
    while matches!(p.peek_tok(), Some(Tok::Sym('*'))) {
        p.pos += 1;
        factors.extend(parse_factor(p)?);
    }
    Ok(RawTerm { num: num_den.0, den: num_den.1, path: Some(factors), line, column })
}

fn parse_relation(p: &mut Parser) -> Result<RawRelation> {
    let (line, column) = p.peek().map_or((0, 0), |t| (t.line, t.column));
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match p.peek_tok() {
            Some(Tok::Sym('+')) => {
                p.pos += 1;
            }
            Some(Tok::Sym('-')) => {
                p.pos += 1;
                negative = true;
            }
            _ if !first => break,
            _ => {}
        }
        first = false;
        terms.push(parse_term(p, negative)?);
    }
    Ok(RawRelation { terms, line, column })
}

fn parse_relations_block(p: &mut Parser, raw: &mut Raw) -> Result<()> {
    p.expect_sym('{')?;
    loop {
        p.skip_separators();
        match p.peek_tok() {
            Some(Tok::Sym('}')) => {
                p.pos += 1;
                return Ok(());
            }
            None => return Err(p.err_here("unterminated relations block")),
            _ => {}
        }
        let rel = parse_relation(p)?;
        raw.relations.push(rel);
        match p.peek_tok() {
            Some(Tok::Sym(';')) | Some(Tok::Newline) | Some(Tok::Sym('}')) => {}
            _ => return Err(p.err_here("expected `;`, newline, or `}` after relation")),
        }
    }
}

/// Parses a `.bqv` presentation. `field_override` replaces the file's field.
pub fn parse_presentation(text: &str, field_override: Option<FieldSpec>) -> Result<Presentation> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut raw = Raw::default();
    loop {
        p.skip_separators();
        let Some(tok) = p.peek().cloned() else { break };
        let Tok::Ident(kw) = &tok.tok else {
            return Err(p.err_here("expected `field`, `quiver`, `relations`, or `bound`"));
        };
        p.pos += 1;
        match kw.as_str() {
            "field" => raw.field = Some(parse_field(&mut p)?),
            "quiver" => {
                if raw.quiver_seen {
                    return Err(Error::Parse {
                        line: tok.line,
                        column: tok.column,
                        message: "duplicate quiver block".into(),
                    });
                }
                raw.quiver_seen = true;
                parse_quiver_block(&mut p, &mut raw)?
            }
            "relations" => parse_relations_block(&mut p, &mut raw)?,
            "bound" => {
                let v = p.int()?;
                raw.bound = Some(v.try_into().map_err(|_| p.err_here("bound too large"))?);
            }
            other => {
                return Err(Error::Parse {
                    line: tok.line,
                    column: tok.column,
                    message: format!("unknown statement `{other}`"),
                })
            }
        }
    }
    if !raw.quiver_seen {
        return Err(Error::Parse { line: 1, column: 1, message: "missing quiver block".into() });
    }
    let field = field_override.or(raw.field).unwrap_or(FieldSpec::Rationals);

    let vertex_index = |name: &str, line: usize, column: usize| {
        raw.vertices.iter().position(|v| v == name).ok_or_else(|| Error::Parse {
            line,
            column,
            message: format!("unknown vertex `{name}`"),
        })
    };
    let mut arrows = Vec::new();
    for (label, src, tgt, line, column) in &raw.arrows {
        arrows.push(Arrow {
            label: label.clone(),
            source: vertex_index(src, *line, *column)?,
            target: vertex_index(tgt, *line, *column)?,
        });
    }
    let quiver = Quiver::new(raw.vertices.clone(), arrows)?;

    let mut relations = Vec::new();
    for rel in &raw.relations {
        let mut x = KqElement::zero();
        for t in &rel.terms {
            let coeff = field.from_ratio(&t.num, &t.den).map_err(|_| Error::Parse {
                line: t.line,
                column: t.column,
                message: format!("coefficient not in field: {}/{} in {field}", t.num, t.den),
            })?;
            let path = match &t.path {
                None => {
                    if quiver.vertex_count() != 1 {
                        return Err(Error::Parse {
                            line: t.line,
                            column: t.column,
                            message: "bare scalar needs a one-vertex quiver; write c*e(v)".into(),
                        });
                    }
                    Path::trivial(0)
                }
                Some(factors) => build_path(&quiver, factors, t.line, t.column)?,
            };
            x.add_term(path, &coeff);
        }
        if x.is_zero() {
            continue;
        }
        if x.endpoints().is_none() {
            return Err(Error::NonParallel(format!(
                "{}:{}: non-parallel relation `{}`",
                rel.line,
                rel.column,
                x.display(&quiver)
            )));
        }
        relations.push(x);
    }
    Presentation::new(quiver, field, relations, raw.bound)
}

fn build_path(q: &Quiver, factors: &[Factor], line: usize, column: usize) -> Result<Path> {
    let mut path: Option<Path> = None;
    for f in factors {
        let next = match f {
            Factor::Idempotent(v) => {
                let i = q.vertex_index(v).ok_or_else(|| Error::Parse {
                    line,
                    column,
                    message: format!("unknown vertex `{v}`"),
                })?;
                Path::trivial(i)
            }
            Factor::Arrow { name, line, column } => {
                let i = q.arrow_index(name).ok_or_else(|| Error::Parse {
                    line: *line,
                    column: *column,
                    message: format!("unknown arrow `{name}`"),
                })?;
                q.arrow_path(i)
            }
        };
        path = Some(match path {
            None => next,
            Some(p) => p.concat(&next).ok_or_else(|| Error::Parse {
                line,
                column,
                message: "arrows do not compose (paths run left to right)".into(),
            })?,
        });
    }
    Ok(path.expect("nonempty factor list"))
}
