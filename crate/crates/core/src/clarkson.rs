//! Clarkson's output-sensitive redundancy removal.
//!
//! Rows are processed in index order against the set `E` of rows already
//! certified non-redundant. If row `i` is redundant with respect to `E` it
//! is redundant, full stop. Otherwise the LP over `E` yields a point (or a
//! ray) beyond row `i`, and shooting from an interior point towards it
//! finds the first row the segment crosses. That row is a facet; it joins
//! `E` and row `i` is tried again unless it was the row found. Every LP has
//! at most `|E|` constraints.
//!
//! The input must be full-dimensional and free of duplicate rows.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::classify::{RowClass, Verdict, Witness};
use crate::error::Error;
use crate::exec::Sequential;
use crate::lp::{solve_counted, LpCounters, LpOutcome, LpProblem};
use crate::minrep::{minimum_representation_with, Method, MinRepOptions, MinRepReport};
use crate::rational::Rational;
use crate::row::{Polyhedron, Row};

#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    /// Shoot along the segment towards a point.
    Point(&'a [Rational]),
    /// Shoot along a ray.
    Direction(&'a [Rational]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hit {
    pub row: usize,
    /// Crossing parameter along `interior + λ·(direction)`.
    pub lambda: Rational,
    pub point: Vec<Rational>,
}

/// First row crossed by the ray from `interior`.
///
/// Rows tied at the smallest crossing parameter are ordered as if the
/// interior point were moved by `(ε, ε², …, ε^d)`: the winner has the
/// lexicographically smallest `Aₖ / (-Aₖ·r)`. For rows that are not
/// positive multiples of each other this picks exactly one, and the row
/// picked is a facet.
pub fn ray_shoot(rows: &[Row], interior: &[Rational], target: Target<'_>) -> Result<Hit, Error> {
    let dir: Vec<Rational> = match target {
        Target::Point(p) => p.iter().zip(interior).map(|(a, b)| a - b).collect(),
        Target::Direction(r) => r.to_vec(),
    };
    let mut best: Option<(usize, Rational, Rational)> = None;
    for (k, row) in rows.iter().enumerate() {
        let rate = row.eval_direction(&dir);
        if !rate.is_negative() {
            continue;
        }
        let v = row.eval(interior);
        if !v.is_positive() {
            return Err(Error::NotInterior { row: k });
        }
        let speed = -rate;
        let lambda = v / &speed;
        let better = match &best {
            None => true,
            Some((j, l, s)) => match lambda.cmp(l) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => tie_order(row, &speed, &rows[*j], s) == Ordering::Less,
            },
        };
        if better {
            best = Some((k, lambda, speed));
        }
    }
    let (row, lambda, _) = best.ok_or(Error::NoExit)?;
    let point = interior
        .iter()
        .zip(&dir)
        .map(|(x, r)| x + &lambda * r)
        .collect();
    Ok(Hit { row, lambda, point })
}

fn tie_order(a: &Row, sa: &Rational, b: &Row, sb: &Rational) -> Ordering {
    for (x, y) in a.a.iter().zip(&b.a) {
        let o = (x * sb).cmp(&(y * sa));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Working state of one run.
#[derive(Clone, Debug, Default)]
pub struct ClarksonState {
    /// Certified rows in the order they were found.
    pub e: Vec<usize>,
    pub interior: Vec<Rational>,
    /// Crossing point that certified each row of `e`, same order.
    pub hits: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClarksonOutcome {
    /// One class per input row.
    pub classes: Vec<RowClass>,
    /// Non-redundant rows, ascending.
    pub nonredundant: Vec<usize>,
    pub max_lp_rows: usize,
}

/// Clarkson's method on a bare full-dimensional inequality system without
/// duplicates. `interior` must satisfy every row strictly.
pub fn clarkson_rows(
    rows: &[Row],
    dim: usize,
    interior: &[Rational],
    counters: Option<&LpCounters>,
) -> Result<ClarksonOutcome, Error> {
    if let Some(k) = rows.iter().position(|r| !r.eval(interior).is_positive()) {
        return Err(Error::NotInterior { row: k });
    }
    let m = rows.len();
    let mut st = ClarksonState {
        interior: interior.to_vec(),
        ..ClarksonState::default()
    };
    let mut in_e = vec![false; m];
    let mut max_lp_rows = 0;
    // z over E at the time row i was found redundant, with its minimizer.
    let mut pending: Vec<Option<(Rational, Vec<Rational>)>> = vec![None; m];

    for i in 0..m {
        while !in_e[i] {
            let cons: Vec<&Row> = st.e.iter().map(|&k| &rows[k]).collect();
            max_lp_rows = max_lp_rows.max(cons.len());
            let lp = LpProblem::minimize(rows[i].clone(), cons, dim);
            let out = solve_counted(&lp, counters);
            let hit = match &out {
                LpOutcome::Optimal { value, point } if !value.is_negative() => {
                    pending[i] = Some((value.clone(), point.clone()));
                    break;
                }
                LpOutcome::Optimal { point, .. } => {
                    ray_shoot(rows, &st.interior, Target::Point(point))?
                }
                LpOutcome::Unbounded { direction, .. } => {
                    ray_shoot(rows, &st.interior, Target::Direction(direction))?
                }
                LpOutcome::Infeasible { .. } => {
                    return Err(Error::Internal("LP over certified rows is infeasible"))
                }
            };
            if in_e[hit.row] {
                return Err(Error::Internal("ray shooting returned a certified row"));
            }
            in_e[hit.row] = true;
            st.e.push(hit.row);
            st.hits.push(hit.point);
        }
    }

    let mut classes: Vec<Option<RowClass>> = vec![None; m];
    for (&k, hit) in st.e.iter().zip(&st.hits) {
        classes[k] = Some(RowClass::new(
            Verdict::NonRedundant,
            Some(Witness::BoundaryHit(hit.clone())),
        ));
    }
    let all_e: Vec<&Row> = st.e.iter().map(|&k| &rows[k]).collect();
    for i in 0..m {
        let Some((z, point)) = pending[i].take() else {
            continue;
        };
        // A positive minimum over a subset of E is positive over all rows.
        // Zero over a subset decides nothing, and a minimizer over a subset
        // need not lie in the polyhedron, so both are redone over the final E.
        let (z, point) = if z.is_positive() && rows.iter().all(|r| !r.eval(&point).is_negative()) {
            (z, point)
        } else {
            max_lp_rows = max_lp_rows.max(all_e.len());
            let lp = LpProblem::minimize(rows[i].clone(), all_e.clone(), dim);
            match solve_counted(&lp, counters) {
                LpOutcome::Optimal { value, point } if !value.is_negative() => (value, point),
                _ => return Err(Error::Internal("redundant row is not redundant over E")),
            }
        };
        let verdict = if z.is_zero() {
            Verdict::WeaklyRedundant
        } else {
            Verdict::StronglyRedundant
        };
        classes[i] = Some(RowClass::new(verdict, Some(Witness::Extremum(point))));
    }
    let mut nonredundant = st.e.clone();
    nonredundant.sort_unstable();
    Ok(ClarksonOutcome {
        classes: classes
            .into_iter()
            .map(|c| c.expect("every row classified"))
            .collect(),
        nonredundant,
        max_lp_rows,
    })
}

/// Minimum representation with the Clarkson method in place of the
/// per-row classification of the reduced system.
pub fn clarkson_nonredundant(p: &Polyhedron) -> Result<MinRepReport, Error> {
    let opts = MinRepOptions {
        method: Method::Clarkson,
        ..MinRepOptions::default()
    };
    minimum_representation_with(p, &opts, &Sequential)
}
