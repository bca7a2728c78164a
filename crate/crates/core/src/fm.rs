//! Projection by Fourier-Motzkin elimination.
//!
//! One column is eliminated per round. If an equation mentions the column
//! it is substituted out; otherwise every row with a positive coefficient
//! is combined with every row with a negative one. Each round is followed
//! by a minimum-representation cleanup. Starting from a minimum
//! representation the rounds never create hidden linearities, so the
//! cleanup skips the linearity search by default.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::classify::full_dimension_test;
use crate::error::Error;
use crate::exec::{Executor, Sequential};
use crate::linalg::{gcd_normalize, normalize_equation};
use crate::minrep::{
    minimum_representation_with, reduced_polyhedron, Method, MinRepOptions, MinRepReport,
};
use crate::row::{Kind, Polyhedron, Row};

/// Columns to keep and the order in which the others are eliminated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSpec {
    dim: usize,
    keep: Vec<usize>,
    eliminate: Vec<usize>,
}

impl ProjectionSpec {
    /// `keep` and `eliminate` must partition `0..dim`.
    pub fn new(dim: usize, keep: Vec<usize>, eliminate: Vec<usize>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for &c in keep.iter().chain(&eliminate) {
            if c >= dim {
                return Err(Error::ColumnIndex { index: c, dim });
            }
            if !seen.insert(c) {
                return Err(Error::BadProjection);
            }
        }
        if seen.len() != dim {
            return Err(Error::BadProjection);
        }
        let mut keep = keep;
        keep.sort_unstable();
        Ok(ProjectionSpec {
            dim,
            keep,
            eliminate,
        })
    }

    /// Eliminates the given columns in the given order.
    pub fn eliminating(dim: usize, eliminate: Vec<usize>) -> Result<Self, Error> {
        let drop: BTreeSet<usize> = eliminate.iter().copied().collect();
        let keep = (0..dim).filter(|c| !drop.contains(c)).collect();
        Self::new(dim, keep, eliminate)
    }

    /// Keeps the given columns and eliminates the rest in ascending order.
    pub fn keeping(dim: usize, keep: Vec<usize>) -> Result<Self, Error> {
        let kept: BTreeSet<usize> = keep.iter().copied().collect();
        let eliminate = (0..dim).filter(|c| !kept.contains(c)).collect();
        Self::new(dim, keep, eliminate)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Kept columns, ascending. Output column `k` is input column `keep[k]`.
    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn eliminate(&self) -> &[usize] {
        &self.eliminate
    }
}

/// Inequality rows split by the sign of their coefficient on one column.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FmPartition {
    pub r: Vec<usize>,
    pub sneg: Vec<usize>,
    pub z: Vec<usize>,
}

pub fn partition(p: &Polyhedron, col: usize) -> FmPartition {
    let mut out = FmPartition::default();
    for i in p.inequality_indices() {
        let v = &p.row(i).a[col];
        if v.is_positive() {
            out.r.push(i);
        } else if v.is_negative() {
            out.sneg.push(i);
        } else {
            out.z.push(i);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    /// Raw result over `d - 1` columns, before any cleanup.
    pub result: Polyhedron,
    /// Equation used for substitution, if any.
    pub by_equation: Option<usize>,
    pub partition: FmPartition,
}

pub fn eliminate_one(p: &Polyhedron, col: usize) -> Result<Elimination, Error> {
    eliminate_one_with(p, col, &Sequential)
}

/// Output order: equations, then the rows of `Z`, then the combinations
/// of `R × Sneg` in `(r, s)` order. All-zero rows are kept.
pub fn eliminate_one_with<E: Executor>(
    p: &Polyhedron,
    col: usize,
    exec: &E,
) -> Result<Elimination, Error> {
    if p.kind() != Kind::H {
        return Err(Error::NotInequalities);
    }
    if col >= p.dim() {
        return Err(Error::ColumnIndex {
            index: col,
            dim: p.dim(),
        });
    }
    let d = p.dim() - 1;

    if let Some(e) = p
        .linearity()
        .iter()
        .copied()
        .find(|&e| !p.row(e).a[col].is_zero())
    {
        let eq = p.row(e);
        let mut rows = Vec::with_capacity(p.len() - 1);
        let mut lin = BTreeSet::new();
        for (i, r) in p.rows().iter().enumerate() {
            if i == e {
                continue;
            }
            let mut r = r.clone();
            if !r.a[col].is_zero() {
                let f = -(&r.a[col] / &eq.a[col]);
                r.add_scaled(eq, &f);
            }
            let r = r.without_column(col);
            if p.is_linearity(i) {
                lin.insert(rows.len());
                rows.push(normalize_equation(&r));
            } else {
                rows.push(gcd_normalize(&r));
            }
        }
        return Ok(Elimination {
            result: Polyhedron::new(Kind::H, d, rows, lin)?,
            by_equation: Some(e),
            partition: FmPartition::default(),
        });
    }

    let part = partition(p, col);
    let mut rows =
        Vec::with_capacity(p.linearity().len() + part.z.len() + part.r.len() * part.sneg.len());
    let mut lin = BTreeSet::new();
    for &i in p.linearity() {
        lin.insert(rows.len());
        rows.push(normalize_equation(&p.row(i).without_column(col)));
    }
    for &i in &part.z {
        rows.push(gcd_normalize(&p.row(i).without_column(col)));
    }
    let batch = exec.batch((0..part.r.len()).collect());
    let combined = exec.map_rows(&batch, |k| {
        let row_r = p.row(part.r[k]);
        let arc = &row_r.a[col];
        Ok(part
            .sneg
            .iter()
            .map(|&s| {
                let row_s = p.row(s);
                let mut v = row_s.scaled(arc);
                v.add_scaled(row_r, &-&row_s.a[col]);
                gcd_normalize(&v.without_column(col))
            })
            .collect::<Vec<Row>>())
    })?;
    for (_, block) in combined {
        rows.extend(block);
    }
    Ok(Elimination {
        result: Polyhedron::new(Kind::H, d, rows, lin)?,
        by_equation: None,
        partition: part,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Order {
    /// The order of [`ProjectionSpec::eliminate`].
    #[default]
    Given,
    /// Each round: a column some equation mentions if there is one,
    /// otherwise the column minimizing `|R|·|Sneg| - |R| - |Sneg|`. Ties go
    /// to the smallest input column.
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectOptions {
    pub order: Order,
    /// Cleanup method after each round.
    pub method: Method,
    /// Skip the linearity search in the per-round cleanup.
    pub skip_linearity_search: bool,
    /// Compute a minimum representation of the input before the first
    /// round. Without it the linearity search cannot be skipped.
    pub initial_minrep: bool,
    /// Check after every round that no hidden linearity appeared.
    pub check_full_dimension: bool,
}

impl Default for ProjectOptions {
    fn default() -> Self {
        ProjectOptions {
            order: Order::Given,
            method: Method::Classic,
            skip_linearity_search: true,
            initial_minrep: true,
            check_full_dimension: cfg!(debug_assertions),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundStats {
    /// Input column eliminated in this round.
    pub column: usize,
    pub by_equation: bool,
    pub r: usize,
    pub sneg: usize,
    pub z: usize,
    /// Rows produced before cleanup, equations included.
    pub raw_rows: usize,
    pub kept_rows: usize,
    pub kept_equations: usize,
    pub lps_solved: usize,
    pub max_lp_rows: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    /// Minimum representation of the projection, over the kept columns.
    pub polyhedron: Polyhedron,
    pub rounds: Vec<RoundStats>,
    /// Report of the initial minimum-representation pass, if it ran.
    pub initial: Option<MinRepReport>,
}

/// Normalized rows of the minimum representation described by `rep`.
fn cleaned(p: &Polyhedron, rep: &MinRepReport) -> Polyhedron {
    let (kind, dim, rows, lin) = reduced_polyhedron(p, rep).into_parts();
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if lin.contains(&i) {
                normalize_equation(r)
            } else {
                gcd_normalize(r)
            }
        })
        .collect();
    Polyhedron::new(kind, dim, rows, lin).expect("same shape")
}

pub fn project<E: Executor>(
    p: &Polyhedron,
    spec: &ProjectionSpec,
    opts: &ProjectOptions,
    exec: &E,
) -> Result<Projection, Error> {
    if p.kind() != Kind::H {
        return Err(Error::NotInequalities);
    }
    if spec.dim() != p.dim() {
        return Err(Error::BadProjection);
    }
    let mut initial = None;
    let mut current = if opts.initial_minrep {
        let rep = minimum_representation_with(
            p,
            &MinRepOptions {
                linearity_search: true,
                method: opts.method,
                check_full_dimension: opts.check_full_dimension,
            },
            exec,
        )?;
        if !rep.feasible {
            return Err(Error::Infeasible);
        }
        let q = cleaned(p, &rep);
        initial = Some(rep);
        q
    } else {
        p.clone()
    };
    let skip = opts.skip_linearity_search && opts.initial_minrep;
    let cleanup = MinRepOptions {
        linearity_search: !skip,
        method: opts.method,
        check_full_dimension: opts.check_full_dimension && !skip,
    };

    let mut columns: Vec<usize> = (0..p.dim()).collect();
    let mut remaining: Vec<usize> = spec.eliminate().to_vec();
    let mut rounds = Vec::new();
    while !remaining.is_empty() {
        let pick = match opts.order {
            Order::Given => 0,
            Order::Heuristic => heuristic_pick(&current, &columns, &remaining),
        };
        let column = remaining.remove(pick);
        let pos = columns
            .iter()
            .position(|&c| c == column)
            .expect("column not yet eliminated");
        let el = eliminate_one_with(&current, pos, exec)?;
        let raw = el.result;
        if el.by_equation.is_none()
            && raw.len() - raw.linearity().len()
                != el.partition.z.len() + el.partition.r.len() * el.partition.sneg.len()
        {
            return Err(Error::Internal("elimination row count"));
        }
        if skip && opts.check_full_dimension && !full_dimension_test(&raw)?.is_full {
            return Err(Error::Internal("hidden linearity after elimination"));
        }
        let rep = minimum_representation_with(&raw, &cleanup, exec)?;
        if !rep.feasible {
            return Err(Error::Infeasible);
        }
        let next = cleaned(&raw, &rep);
        rounds.push(RoundStats {
            column,
            by_equation: el.by_equation.is_some(),
            r: el.partition.r.len(),
            sneg: el.partition.sneg.len(),
            z: el.partition.z.len(),
            raw_rows: raw.len(),
            kept_rows: next.len(),
            kept_equations: next.linearity().len(),
            lps_solved: rep.stats.lps_solved,
            max_lp_rows: rep.stats.max_lp_rows,
        });
        columns.remove(pos);
        current = next;
    }
    debug_assert_eq!(columns, spec.keep());
    Ok(Projection {
        polyhedron: current,
        rounds,
        initial,
    })
}

fn heuristic_pick(p: &Polyhedron, columns: &[usize], remaining: &[usize]) -> usize {
    let pos_of = |c: usize| columns.iter().position(|&x| x == c).expect("live column");
    let by_eq = remaining
        .iter()
        .enumerate()
        .filter(|(_, &c)| {
            let j = pos_of(c);
            p.linearity().iter().any(|&e| !p.row(e).a[j].is_zero())
        })
        .min_by_key(|(_, &c)| c);
    if let Some((k, _)) = by_eq {
        return k;
    }
    remaining
        .iter()
        .enumerate()
        .min_by_key(|(_, &c)| {
            let part = partition(p, pos_of(c));
            let (r, s) = (part.r.len() as i128, part.sneg.len() as i128);
            (r * s - r - s, c)
        })
        .map(|(k, _)| k)
        .expect("remaining is not empty")
}
