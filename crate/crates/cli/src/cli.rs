//! Command-line front end.
//!
//! ```text
//! redund [VERB] [FILE] [--threads N] [--clarkson] [--fm-order given|heuristic]
//!        [--eliminate J..] [--project J..] [--verify] [--stats]
//! ```
//!
//! The output polyhedron goes to stdout, diagnostics and `--stats` lines to
//! stderr. Without a verb the file's trailing options decide (`eliminate`
//! and `project` run `fel`, `redund` runs `redund`), and `minrep` runs
//! otherwise.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use redund_core::fm::{project, Order, ProjectOptions, Projection, ProjectionSpec};
use redund_core::minrep::{minimum_representation_with, verify_report, MinRepReport};
use redund_core::oracle::{enumerate_vertices, golden_square, naive_classify};
use redund_core::{Error, Kind, Method, MinRepOptions, Polyhedron, Rational, Row, Verdict};

use crate::format::{emit_polyhedron, emit_report, parse, Job, PolyFile};
use crate::pool::ThreadPool;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_GUARD_RAIL: i32 = 4;
/// `--verify` found a certificate that does not check.
pub const EXIT_VERIFY: i32 = 5;

const VERBS: [&str; 5] = ["minrep", "redund", "fel", "goldensquare", "oracle"];

#[derive(Parser, Debug)]
#[command(
    name = "redund",
    version,
    about = "Exact redundancy removal and projection for polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Find hidden linearities and remove redundant rows.
    Minrep(Common),
    /// Remove redundant rows without looking for hidden linearities.
    Redund(Common),
    /// Fourier-Motzkin projection.
    Fel(Common),
    /// Projection via vertex enumeration (tiny inputs only).
    Goldensquare(Common),
    /// Vertices, rays and brute-force row verdicts (tiny inputs only).
    Oracle(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FmOrder {
    Given,
    Heuristic,
}

#[derive(Args, Debug)]
struct Common {
    /// Input file; stdin if absent or `-`.
    input: Option<PathBuf>,
    /// Worker threads (default: logical cores).
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Use Clarkson's method for the redundancy pass.
    #[arg(long)]
    clarkson: bool,
    #[arg(long, value_enum, default_value = "given")]
    fm_order: FmOrder,
    /// Columns to eliminate, 1-based, comma separated or repeated.
    #[arg(long, value_delimiter = ',', conflicts_with = "project")]
    eliminate: Vec<usize>,
    /// Columns to keep, 1-based, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    project: Vec<usize>,
    /// Check every certificate of the result.
    #[arg(long)]
    verify: bool,
    /// Print counters as `key=value` lines on stderr.
    #[arg(long)]
    stats: bool,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Failure with its exit status; the message is already printed.
struct Exit(i32);

impl Io<'_> {
    fn fail(&mut self, code: i32, msg: impl std::fmt::Display) -> Exit {
        let _ = writeln!(self.err, "redund: {msg}");
        Exit(code)
    }

    fn core(&mut self, e: Error) -> Exit {
        let code = match innermost(&e) {
            Error::GuardRail { .. } => EXIT_GUARD_RAIL,
            Error::Infeasible => EXIT_INFEASIBLE,
            _ => EXIT_USAGE,
        };
        self.fail(code, e)
    }

    fn stat(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.err, "{key}={value}");
    }
}

fn innermost(e: &Error) -> &Error {
    match e {
        Error::Task { source, .. } => innermost(source),
        other => other,
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let explicit = args.get(1).and_then(|a| a.to_str()).is_some_and(|a| {
        VERBS.contains(&a) || matches!(a, "help" | "-h" | "--help" | "-V" | "--version")
    });
    if !explicit {
        let at = args.len().min(1);
        args.insert(at, "minrep".into());
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.verb, explicit, stdin, &mut io) {
        Ok(()) => EXIT_OK,
        Err(Exit(code)) => code,
    }
}

fn dispatch(verb: Verb, explicit: bool, stdin: &mut dyn Read, io: &mut Io<'_>) -> Result<(), Exit> {
    let (name, common) = match &verb {
        Verb::Minrep(c) => ("minrep", c),
        Verb::Redund(c) => ("redund", c),
        Verb::Fel(c) => ("fel", c),
        Verb::Goldensquare(c) => ("goldensquare", c),
        Verb::Oracle(c) => ("oracle", c),
    };
    let file = read_input(common, stdin, io)?;
    for w in &file.warnings {
        let _ = writeln!(io.err, "redund: warning: {w}");
    }
    let name = if explicit {
        name
    } else {
        match file.jobs.last() {
            Some(Job::Eliminate(_) | Job::Project(_)) => "fel",
            Some(Job::Redund) => "redund",
            _ => name,
        }
    };
    let pool = ThreadPool::with_cap(common.threads.map(|n| n as usize));
    match name {
        "minrep" => run_minrep(&file, common, true, &pool, io),
        "redund" => run_minrep(&file, common, false, &pool, io),
        "fel" => run_fel(&file, common, &pool, io),
        "goldensquare" => run_golden(&file, common, &pool, io),
        _ => run_oracle(&file, io),
    }
}

fn read_input(common: &Common, stdin: &mut dyn Read, io: &mut Io<'_>) -> Result<PolyFile, Exit> {
    let mut text = String::new();
    let source = match &common.input {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| io.fail(EXIT_USAGE, format_args!("{}: {e}", p.display())))?;
            p.display().to_string()
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| io.fail(EXIT_USAGE, format_args!("stdin: {e}")))?;
            "stdin".to_string()
        }
    };
    parse(&text).map_err(|e| io.fail(EXIT_PARSE, format_args!("{source}: {e}")))
}

fn method(common: &Common) -> Method {
    if common.clarkson {
        Method::Clarkson
    } else {
        Method::Classic
    }
}

fn run_minrep(
    file: &PolyFile,
    common: &Common,
    linearity_search: bool,
    pool: &ThreadPool,
    io: &mut Io<'_>,
) -> Result<(), Exit> {
    let p = &file.polyhedron;
    let opts = MinRepOptions {
        linearity_search,
        method: method(common),
        ..MinRepOptions::default()
    };
    let t0 = Instant::now();
    let report = minimum_representation_with(p, &opts, pool).map_err(|e| io.core(e))?;
    let elapsed = t0.elapsed();
    if common.stats {
        report_stats(io, p, &report, common, pool);
        io.stat("seconds", format_args!("{:.3}", elapsed.as_secs_f64()));
    }
    if common.verify {
        verify_report(p, &report).map_err(|m| match m.row {
            Some(r) => io.fail(
                EXIT_VERIFY,
                format_args!("verification failed at row {}: {}", r + 1, m.reason),
            ),
            None => io.fail(
                EXIT_VERIFY,
                format_args!("verification failed: {}", m.reason),
            ),
        })?;
        let _ = writeln!(io.err, "redund: all certificates check");
    }
    if !report.feasible {
        let mut msg = String::from("input is infeasible");
        if let Some(c) = &report.certificate {
            msg.push_str("; certificate (row:multiplier)");
            for (i, v) in &c.multipliers {
                msg.push_str(&format!(" {}:{}", i + 1, v));
            }
        }
        return Err(io.fail(EXIT_INFEASIBLE, msg));
    }
    let text = emit_report(file.name.as_deref(), p, &report);
    io.out
        .write_all(text.as_bytes())
        .map_err(|e| io.fail(EXIT_USAGE, e))
}

fn report_stats(
    io: &mut Io<'_>,
    p: &Polyhedron,
    r: &MinRepReport,
    common: &Common,
    pool: &ThreadPool,
) {
    use redund_core::Executor;
    io.stat("threads", pool.width());
    io.stat(
        "method",
        if common.clarkson {
            "clarkson"
        } else {
            "classic"
        },
    );
    io.stat("rows", p.len());
    io.stat("dimension", p.dim());
    io.stat("feasible", r.feasible);
    io.stat("full_dimensional", r.stats.full_dimensional);
    io.stat("reduced_rows", r.stats.reduced_rows);
    io.stat("linearities", r.final_linearity.len());
    io.stat("nonredundant", r.final_nonredundant.len());
    io.stat("duplicates", r.duplicate_of.len());
    io.stat("lps_solved", r.stats.lps_solved);
    io.stat("pivots", r.stats.pivots);
    let redundancy_lp = if common.clarkson {
        r.stats.max_clarkson_lp_rows
    } else {
        r.stats.max_lp_rows
    };
    io.stat("max_lp_rows", redundancy_lp);
    io.stat("max_lp_rows_any", r.stats.max_lp_rows);
}

fn projection_spec(
    file: &PolyFile,
    common: &Common,
    io: &mut Io<'_>,
) -> Result<ProjectionSpec, Exit> {
    let dim = file.polyhedron.dim();
    let one_based = |cols: &[usize], io: &mut Io<'_>| -> Result<Vec<usize>, Exit> {
        cols.iter()
            .map(|&c| {
                if c == 0 || c > dim {
                    Err(io.fail(
                        EXIT_USAGE,
                        format_args!("column {c} out of range 1..={dim}"),
                    ))
                } else {
                    Ok(c - 1)
                }
            })
            .collect()
    };
    let spec = if !common.eliminate.is_empty() {
        ProjectionSpec::eliminating(dim, one_based(&common.eliminate, io)?)
    } else if !common.project.is_empty() {
        ProjectionSpec::keeping(dim, one_based(&common.project, io)?)
    } else {
        match file
            .jobs
            .iter()
            .rev()
            .find(|j| matches!(j, Job::Eliminate(_) | Job::Project(_)))
        {
            Some(Job::Eliminate(c)) => ProjectionSpec::eliminating(dim, c.clone()),
            Some(Job::Project(c)) => ProjectionSpec::keeping(dim, c.clone()),
            _ => return Err(io.fail(EXIT_USAGE, "fel needs --eliminate or --project")),
        }
    };
    spec.map_err(|e| io.fail(EXIT_USAGE, e))
}

fn require_h(file: &PolyFile, io: &mut Io<'_>) -> Result<(), Exit> {
    if file.kind() != Kind::H {
        return Err(io.fail(EXIT_USAGE, "this verb needs an H-representation"));
    }
    Ok(())
}

fn run_fel(
    file: &PolyFile,
    common: &Common,
    pool: &ThreadPool,
    io: &mut Io<'_>,
) -> Result<(), Exit> {
    require_h(file, io)?;
    let spec = projection_spec(file, common, io)?;
    let opts = ProjectOptions {
        order: match common.fm_order {
            FmOrder::Given => Order::Given,
            FmOrder::Heuristic => Order::Heuristic,
        },
        method: method(common),
        ..ProjectOptions::default()
    };
    let t0 = Instant::now();
    let proj: Projection = project(&file.polyhedron, &spec, &opts, pool).map_err(|e| io.core(e))?;
    let elapsed = t0.elapsed();
    if common.stats {
        use redund_core::Executor;
        io.stat("threads", pool.width());
        io.stat("rows", file.polyhedron.len());
        io.stat("dimension", file.polyhedron.dim());
        if let Some(r) = &proj.initial {
            io.stat(
                "initial_rows",
                r.final_linearity.len() + r.final_nonredundant.len(),
            );
            io.stat("initial_lps_solved", r.stats.lps_solved);
        }
        for (k, r) in proj.rounds.iter().enumerate() {
            let _ = writeln!(
                io.err,
                "round={} column={} by_equation={} r={} sneg={} z={} raw_rows={} kept_rows={} kept_equations={} lps_solved={} max_lp_rows={}",
                k + 1,
                r.column + 1,
                r.by_equation,
                r.r,
                r.sneg,
                r.z,
                r.raw_rows,
                r.kept_rows,
                r.kept_equations,
                r.lps_solved,
                r.max_lp_rows
            );
        }
        io.stat("output_rows", proj.polyhedron.len());
        io.stat("seconds", format_args!("{:.3}", elapsed.as_secs_f64()));
    }
    if common.verify {
        let q = &proj.polyhedron;
        let rep = minimum_representation_with(q, &MinRepOptions::default(), pool)
            .map_err(|e| io.core(e))?;
        let kept = rep.final_linearity.len() + rep.final_nonredundant.len();
        if verify_report(q, &rep).is_err()
            || kept != q.len()
            || rep.final_linearity != *q.linearity()
        {
            return Err(io.fail(
                EXIT_VERIFY,
                "verification failed: projection is not a minimum representation",
            ));
        }
        let _ = writeln!(io.err, "redund: output is a minimum representation");
    }
    let text = emit_polyhedron(file.name.as_deref(), &proj.polyhedron);
    io.out
        .write_all(text.as_bytes())
        .map_err(|e| io.fail(EXIT_USAGE, e))
}

fn run_golden(
    file: &PolyFile,
    common: &Common,
    pool: &ThreadPool,
    io: &mut Io<'_>,
) -> Result<(), Exit> {
    require_h(file, io)?;
    let spec = projection_spec(file, common, io)?;
    let q = golden_square(&file.polyhedron, &spec, pool).map_err(|e| io.core(e))?;
    let text = emit_polyhedron(file.name.as_deref(), &q);
    io.out
        .write_all(text.as_bytes())
        .map_err(|e| io.fail(EXIT_USAGE, e))
}

fn run_oracle(file: &PolyFile, io: &mut Io<'_>) -> Result<(), Exit> {
    require_h(file, io)?;
    let p = &file.polyhedron;
    let vl = enumerate_vertices(p).map_err(|e| io.core(e))?;
    if vl.vertices.is_empty() {
        return Err(io.fail(EXIT_INFEASIBLE, "input is infeasible"));
    }
    let mut text = String::new();
    if let Some(n) = &file.name {
        text.push_str(n);
        text.push('\n');
    }
    text.push_str("* row verdicts by exhaustive enumeration\n");
    for i in p.inequality_indices() {
        let c = naive_classify(p, i).map_err(|e| io.core(e))?;
        let v = match c.verdict {
            Verdict::Linearity => "linearity",
            Verdict::StronglyRedundant => "strongly redundant",
            Verdict::WeaklyRedundant => "weakly redundant",
            Verdict::NonRedundant => "nonredundant",
        };
        text.push_str(&format!("* {} {}\n", i + 1, v));
    }
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let rows: Vec<Row> = vl
        .vertices
        .iter()
        .map(|x| Row::new(one.clone(), x.clone()))
        .chain(vl.rays.iter().map(|r| Row::new(zero.clone(), r.clone())))
        .collect();
    let v = Polyhedron::new(Kind::V, p.dim(), rows, Default::default()).map_err(|e| io.core(e))?;
    text.push_str(&emit_polyhedron(None, &v));
    io.out
        .write_all(text.as_bytes())
        .map_err(|e| io.fail(EXIT_USAGE, e))
}
