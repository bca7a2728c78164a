//! lrs `.ine` / `.ext` files.
//!
//! ```text
//! cube
//! H-representation
//! linearity 1 1
//! begin
//! 3 3 rational
//! 0 1 0
//! 0 0 1
//! 1 -1 -1/2
//! end
//! redund
//! ```
//!
//! Lines starting with `*` are comments. Linearity indices and column
//! numbers in job options are 1-based in the file and 0-based in memory.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use redund_core::linalg::{gcd_normalize, normalize_equation};
use redund_core::minrep::{reduced_polyhedron, Disposition, MinRepReport};
use redund_core::rational::primitive_direction;
use redund_core::{Error as CoreError, Kind, Polyhedron, Rational, Row, Verdict};

/// Options found after `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Job {
    Redund,
    Minrep,
    /// Columns to eliminate, 0-based, in file order.
    Eliminate(Vec<usize>),
    /// Columns to keep, 0-based, in file order.
    Project(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFile {
    pub name: Option<String>,
    pub polyhedron: Polyhedron,
    pub jobs: Vec<Job>,
    /// Unsupported options that were skipped.
    pub warnings: Vec<Warning>,
}

impl PolyFile {
    pub fn new(name: Option<String>, polyhedron: Polyhedron) -> Self {
        PolyFile {
            name,
            polyhedron,
            jobs: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn kind(&self) -> Kind {
        self.polyhedron.kind()
    }

    pub fn m(&self) -> usize {
        self.polyhedron.len()
    }

    pub fn n(&self) -> usize {
        self.polyhedron.dim() + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line, 0 for end of input.
    pub line: usize,
    /// 1-based field on the line, if the problem is a single entry.
    pub field: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.field) {
            (0, _) => write!(f, "end of input: {}", self.message),
            (l, Some(c)) => write!(f, "line {l}, entry {c}: {}", self.message),
            (l, None) => write!(f, "line {l}: {}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        field: None,
        message: message.into(),
    }
}

fn err_at(line: usize, field: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        field: Some(field),
        message: message.into(),
    }
}

/// `p`, `-p`, `+p` or `p/q` with `q > 0`.
pub fn parse_rational(tok: &str) -> Result<Rational, String> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (tok, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['-', '+']).unwrap_or(num);
    if !digits(unsigned) {
        return Err(format!("`{tok}` is not a rational number"));
    }
    let n = BigInt::from_str(num).map_err(|_| format!("`{tok}` is not a rational number"))?;
    let d = match den {
        None => BigInt::one(),
        Some(d) if digits(d) => BigInt::from_str(d).expect("digits"),
        Some(_) => return Err(format!("`{tok}` has a malformed denominator")),
    };
    if d.is_zero() {
        return Err(format!("`{tok}` has a zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn parse_count(tok: &str, line: usize, field: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>().map_err(|_| {
        err_at(
            line,
            field,
            format!("{what} `{tok}` is not a non-negative integer"),
        )
    })
}

/// `k i₁ … i_k` after a keyword; returns the 1-based indices.
fn counted_list(toks: &[&str], line: usize, what: &str) -> Result<Vec<usize>, ParseError> {
    let Some(first) = toks.first() else {
        return Err(err(line, format!("{what}: missing count")));
    };
    let k = parse_count(first, line, 2, "count")?;
    if toks.len() - 1 != k {
        return Err(err(
            line,
            format!("{what}: count says {k} indices, found {}", toks.len() - 1),
        ));
    }
    toks[1..]
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let v = parse_count(t, line, j + 3, "index")?;
            if v == 0 {
                return Err(err_at(line, j + 3, "indices start at 1"));
            }
            Ok(v)
        })
        .collect()
}

enum Stage {
    Header,
    Size,
    Rows,
    Trailer,
}

pub fn parse(text: &str) -> Result<PolyFile, ParseError> {
    let mut name = None;
    let mut kind = None;
    let mut linearity: Option<(usize, Vec<usize>)> = None;
    let mut warnings = Vec::new();
    let mut jobs = Vec::new();
    let mut stage = Stage::Header;
    let mut size = (0usize, 0usize);
    let mut rows: Vec<Row> = Vec::new();
    let mut row_lines: Vec<usize> = Vec::new();
    let mut saw_end = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('*') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match stage {
            Stage::Header => match toks[0] {
                "H-representation" | "V-representation" => {
                    if kind.is_some() {
                        return Err(err(line, "representation declared twice"));
                    }
                    kind = Some(if toks[0].starts_with('H') {
                        Kind::H
                    } else {
                        Kind::V
                    });
                }
                "linearity" => {
                    if linearity.is_some() {
                        return Err(err(line, "linearity declared twice"));
                    }
                    linearity = Some((line, counted_list(&toks[1..], line, "linearity")?));
                }
                "begin" => stage = Stage::Size,
                _ if name.is_none() && kind.is_none() && linearity.is_none() => {
                    name = Some(trimmed.to_string());
                }
                _ => warnings.push(Warning {
                    line,
                    message: format!("ignoring unsupported option `{}`", toks[0]),
                }),
            },
            Stage::Size => {
                if toks.len() != 3 {
                    return Err(err(line, "expected `m n rational`"));
                }
                let m = parse_count(toks[0], line, 1, "row count")?;
                let n = parse_count(toks[1], line, 2, "column count")?;
                if n == 0 {
                    return Err(err_at(line, 2, "column count must be at least 1"));
                }
                match toks[2] {
                    "rational" | "integer" => {}
                    other => {
                        return Err(err_at(
                            line,
                            3,
                            format!("unsupported number type `{other}`"),
                        ))
                    }
                }
                size = (m, n);
                stage = if m == 0 { Stage::Trailer } else { Stage::Rows };
            }
            Stage::Rows => {
                if toks.len() != size.1 {
                    return Err(err(
                        line,
                        format!("expected {} entries, found {}", size.1, toks.len()),
                    ));
                }
                let mut vals = Vec::with_capacity(size.1);
                for (j, t) in toks.iter().enumerate() {
                    vals.push(parse_rational(t).map_err(|m| err_at(line, j + 1, m))?);
                }
                let b = vals.remove(0);
                rows.push(Row::new(b, vals));
                row_lines.push(line);
                if rows.len() == size.0 {
                    stage = Stage::Trailer;
                }
            }
            Stage::Trailer if !saw_end => {
                if toks[0] != "end" {
                    return Err(err(
                        line,
                        format!("expected `end` after {} rows, found `{}`", size.0, toks[0]),
                    ));
                }
                saw_end = true;
            }
            Stage::Trailer => match parse_job(&toks, line, size.1 - 1)? {
                Some(j) => jobs.push(j),
                None => warnings.push(Warning {
                    line,
                    message: format!("ignoring unsupported option `{}`", toks[0]),
                }),
            },
        }
    }
    match stage {
        Stage::Header | Stage::Size => return Err(err(0, "missing `begin` / size line")),
        Stage::Rows => {
            return Err(err(
                0,
                format!("expected {} rows, found {}", size.0, rows.len()),
            ))
        }
        Stage::Trailer if !saw_end => return Err(err(0, "missing `end`")),
        Stage::Trailer => {}
    }

    let kind = kind.unwrap_or(Kind::H);
    let mut lin = BTreeSet::new();
    if let Some((line, idx)) = linearity {
        for (j, i) in idx.into_iter().enumerate() {
            if i > size.0 {
                return Err(err_at(
                    line,
                    j + 3,
                    format!("linearity index {i} out of range for {} rows", size.0),
                ));
            }
            lin.insert(i - 1);
        }
    }
    let polyhedron = Polyhedron::new(kind, size.1 - 1, rows, lin).map_err(|e| match e {
        CoreError::GeneratorLead { row } => err_at(
            row_lines[row],
            1,
            "leading entry of a V-representation row must be 0 or 1",
        ),
        other => err(0, other.to_string()),
    })?;
    Ok(PolyFile {
        name,
        polyhedron,
        jobs,
        warnings,
    })
}

fn parse_job(toks: &[&str], line: usize, dim: usize) -> Result<Option<Job>, ParseError> {
    let columns = |what: &str| -> Result<Vec<usize>, ParseError> {
        let cols = counted_list(&toks[1..], line, what)?;
        for (j, &c) in cols.iter().enumerate() {
            if c > dim {
                return Err(err_at(
                    line,
                    j + 3,
                    format!("column {c} out of range for dimension {dim}"),
                ));
            }
        }
        Ok(cols.into_iter().map(|c| c - 1).collect())
    };
    Ok(match toks[0] {
        "redund" => Some(Job::Redund),
        "minrep" => Some(Job::Minrep),
        "eliminate" => Some(Job::Eliminate(columns("eliminate")?)),
        "project" => Some(Job::Project(columns("project")?)),
        _ => None,
    })
}

fn push_rows(out: &mut String, p: &Polyhedron) {
    let tag = match p.kind() {
        Kind::H => "H-representation",
        Kind::V => "V-representation",
    };
    out.push_str(tag);
    out.push('\n');
    if !p.linearity().is_empty() {
        write!(out, "linearity {}", p.linearity().len()).unwrap();
        for i in p.linearity() {
            write!(out, " {}", i + 1).unwrap();
        }
        out.push('\n');
    }
    out.push_str("begin\n");
    writeln!(out, "{} {} rational", p.len(), p.dim() + 1).unwrap();
    for r in p.rows() {
        let mut first = true;
        for v in r.entries() {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out.push_str("end\n");
}

/// Plain file text. `parse` gives back the same polyhedron.
pub fn emit_polyhedron(name: Option<&str>, p: &Polyhedron) -> String {
    let mut out = String::new();
    if let Some(n) = name {
        out.push_str(n);
        out.push('\n');
    }
    push_rows(&mut out, p);
    out
}

pub fn emit(file: &PolyFile) -> String {
    let mut out = emit_polyhedron(file.name.as_deref(), &file.polyhedron);
    for j in &file.jobs {
        let (word, cols) = match j {
            Job::Redund => ("redund", None),
            Job::Minrep => ("minrep", None),
            Job::Eliminate(c) => ("eliminate", Some(c)),
            Job::Project(c) => ("project", Some(c)),
        };
        out.push_str(word);
        if let Some(c) = cols {
            write!(out, " {}", c.len()).unwrap();
            for x in c {
                write!(out, " {}", x + 1).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

/// Equations sign-normalized, inequalities and rays scaled to primitive
/// integers, vertices untouched.
pub fn normalize_rows(p: &Polyhedron) -> Polyhedron {
    let rows = p
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| match p.kind() {
            Kind::H if p.is_linearity(i) => normalize_equation(r),
            Kind::H => gcd_normalize(r),
            Kind::V if r.b.is_zero() => {
                let d = primitive_direction(&r.a);
                if p.is_linearity(i) {
                    normalize_equation(&Row::new(Rational::zero(), d))
                } else {
                    Row::new(Rational::zero(), d)
                }
            }
            Kind::V => r.clone(),
        })
        .collect();
    Polyhedron::new(p.kind(), p.dim(), rows, p.linearity().clone()).expect("same shape")
}

/// The minimum representation of `p` described by `report`, rows in input
/// order, with a comment block mapping every input row to its fate.
/// Stripping the `*` lines leaves `emit_polyhedron` of the output.
pub fn emit_report(name: Option<&str>, p: &Polyhedron, report: &MinRepReport) -> String {
    let q = normalize_rows(&reduced_polyhedron(p, report));
    let kept: Vec<usize> = report
        .final_linearity
        .union(&report.final_nonredundant)
        .copied()
        .collect();
    let mut out = String::new();
    if let Some(n) = name {
        out.push_str(n);
        out.push('\n');
    }
    writeln!(
        out,
        "* minimum representation: {} input rows, {} linearities, {} other rows kept",
        p.len(),
        report.final_linearity.len(),
        report.final_nonredundant.len()
    )
    .unwrap();
    out.push_str("* input output verdict\n");
    for i in 0..p.len() {
        let pos = kept
            .binary_search(&i)
            .map(|k| (k + 1).to_string())
            .unwrap_or_else(|_| "-".to_string());
        writeln!(
            out,
            "* {} {} {}",
            i + 1,
            pos,
            verdict_text(report.disposition(i))
        )
        .unwrap();
    }
    push_rows(&mut out, &q);
    out
}

pub fn verdict_text(d: Disposition) -> String {
    match d {
        Disposition::Linearity => "linearity".into(),
        Disposition::NonRedundant => "nonredundant".into(),
        Disposition::Redundant(Verdict::StronglyRedundant) => "strongly redundant".into(),
        Disposition::Redundant(Verdict::WeaklyRedundant) => "weakly redundant".into(),
        Disposition::Redundant(Verdict::Linearity) => "linearity".into(),
        Disposition::Redundant(Verdict::NonRedundant) => "nonredundant".into(),
        Disposition::Duplicate(k) => format!("duplicate of {}", k + 1),
        Disposition::DependentEquation => "dependent equation".into(),
        Disposition::Vacuous => "vacuous".into(),
        Disposition::Undecided => "undecided".into(),
    }
}
