//! Single-row classification and the full-dimensionality test.
//!
//! For row `i` of `b + A x ≥ 0` let `z_min` / `z_max` be the minimum and
//! maximum of `bᵢ + Aᵢx` over the polyhedron with row `i` removed. The row
//! is a linearity when `z_max = 0`; otherwise it is strongly redundant when
//! `z_min > 0`, weakly redundant when `z_min = 0` and non-redundant when
//! `z_min < 0` or the minimum is unbounded.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg::{gaussian_reduce, Substitution};
use crate::lp::{solve_counted, LpCounters, LpOutcome, LpProblem};
use crate::rational::Rational;
use crate::row::{Kind, Polyhedron, Row};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Linearity,
    StronglyRedundant,
    WeaklyRedundant,
    NonRedundant,
}

impl Verdict {
    pub fn is_redundant(self) -> bool {
        matches!(self, Verdict::StronglyRedundant | Verdict::WeaklyRedundant)
    }
}

/// Point backing a verdict, in the coordinates of the classified system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// Violates the row and satisfies every other row.
    Violating(Vec<Rational>),
    /// Satisfies every row and attains `z_min` (redundant rows) or `z_max`
    /// (linearities).
    Extremum(Vec<Rational>),
    /// Satisfies every row and lies on the row's hyperplane; the first
    /// point where a ray from an interior point leaves the polyhedron.
    BoundaryHit(Vec<Rational>),
}

impl Witness {
    pub fn point(&self) -> &[Rational] {
        match self {
            Witness::Violating(p) | Witness::Extremum(p) | Witness::BoundaryHit(p) => p,
        }
    }

    pub fn map_point(self, f: impl FnOnce(&[Rational]) -> Vec<Rational>) -> Witness {
        match self {
            Witness::Violating(p) => Witness::Violating(f(&p)),
            Witness::Extremum(p) => Witness::Extremum(f(&p)),
            Witness::BoundaryHit(p) => Witness::BoundaryHit(f(&p)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowClass {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl RowClass {
    pub fn new(verdict: Verdict, witness: Option<Witness>) -> Self {
        RowClass { verdict, witness }
    }
}

/// Classifies inequality `i` of an H-representation without equations.
///
/// With `check_linearity` the maximization LP is solved as well whenever
/// the row is not strongly redundant, so a row that is both a linearity and
/// the only bound in its direction is reported as [`Verdict::Linearity`].
pub fn classify(p: &Polyhedron, i: usize, check_linearity: bool) -> Result<RowClass, Error> {
    if p.kind() != Kind::H {
        return Err(Error::NotInequalities);
    }
    if !p.linearity().is_empty() {
        return Err(Error::HasEquations);
    }
    if i >= p.len() {
        return Err(Error::RowIndex {
            index: i,
            rows: p.len(),
        });
    }
    classify_in(p.rows(), p.dim(), i, check_linearity, None)
}

/// [`classify`] on a bare inequality system.
pub fn classify_in(
    rows: &[Row],
    dim: usize,
    i: usize,
    check_linearity: bool,
    counters: Option<&LpCounters>,
) -> Result<RowClass, Error> {
    let target = &rows[i];
    let others: Vec<&Row> = rows
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, r)| r)
        .collect();

    let lpmin = LpProblem::minimize(target.clone(), others.clone(), dim);
    let (z_min, min_point) = match solve_counted(&lpmin, counters) {
        LpOutcome::Infeasible { .. } => return Err(Error::Infeasible),
        LpOutcome::Optimal { value, point } => (Some(value), point),
        LpOutcome::Unbounded { point, direction } => {
            (None, violating_along(target, point, &direction))
        }
    };

    if let Some(z) = &z_min {
        if z.is_positive() {
            return Ok(RowClass::new(
                Verdict::StronglyRedundant,
                Some(Witness::Extremum(min_point)),
            ));
        }
    }

    if check_linearity {
        let lpmax = LpProblem::maximize(target.clone(), others, dim);
        match solve_counted(&lpmax, counters) {
            LpOutcome::Optimal { value, point } if value.is_zero() => {
                return Ok(RowClass::new(
                    Verdict::Linearity,
                    Some(Witness::Extremum(point)),
                ));
            }
            LpOutcome::Infeasible { .. } => return Err(Error::Infeasible),
            _ => {}
        }
    }

    Ok(match z_min {
        Some(z) if z.is_zero() => {
            RowClass::new(Verdict::WeaklyRedundant, Some(Witness::Extremum(min_point)))
        }
        _ => RowClass::new(Verdict::NonRedundant, Some(Witness::Violating(min_point))),
    })
}

/// Moves from a feasible `point` along an improving ray until `row`
/// evaluates to -1 (or stays put if it is already negative).
fn violating_along(row: &Row, point: Vec<Rational>, direction: &[Rational]) -> Vec<Rational> {
    let v = row.eval(&point);
    if v.is_negative() {
        return point;
    }
    let rate = row.eval_direction(direction);
    debug_assert!(rate.is_negative());
    let step = (v + Rational::one()) / -rate;
    point
        .iter()
        .zip(direction)
        .map(|(x, d)| x + &step * d)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullDimension {
    pub is_full: bool,
    /// Relative-interior point, present when `is_full`.
    pub interior_point: Option<Vec<Rational>>,
    /// Optimal value of the auxiliary variable (capped at 1).
    pub depth: Rational,
}

/// Maximizes `t` subject to `b_L + A_L x = 0`, `b_I + A_I x ≥ t`, `t ≤ 1`.
/// The polyhedron has no hidden linearity exactly when the optimum is
/// positive.
pub fn full_dimension_test(p: &Polyhedron) -> Result<FullDimension, Error> {
    if p.kind() != Kind::H {
        return Err(Error::NotInequalities);
    }
    let (eqs, ineqs): (Vec<usize>, Vec<usize>) = (0..p.len())
        .filter(|&i| !p.row(i).is_zero())
        .partition(|&i| p.is_linearity(i));
    let eq_rows: Vec<Row> = eqs.iter().map(|&i| p.row(i).clone()).collect();
    let red = gaussian_reduce(&eq_rows);
    if red.inconsistent.is_some() {
        return Err(Error::Infeasible);
    }
    let sub = Substitution::from_reduction(&red, p.dim());
    let reduced: Vec<Row> = ineqs.iter().map(|&i| sub.reduce_row(p.row(i))).collect();
    let (depth, y) = interior_in(&reduced, sub.reduced_dim(), None)?;
    let is_full = depth.is_positive();
    Ok(FullDimension {
        is_full,
        interior_point: is_full.then(|| sub.lift_point(&y)),
        depth,
    })
}

/// The capped interior-point LP on a bare inequality system. Returns the
/// optimal depth and the maximizing point.
pub fn interior_in(
    rows: &[Row],
    dim: usize,
    counters: Option<&LpCounters>,
) -> Result<(Rational, Vec<Rational>), Error> {
    let mut lifted: Vec<Row> = rows
        .iter()
        .map(|r| {
            let mut a = r.a.clone();
            a.push(-Rational::one());
            Row::new(r.b.clone(), a)
        })
        .collect();
    let mut cap = vec![Rational::zero(); dim + 1];
    cap[dim] = -Rational::one();
    lifted.push(Row::new(Rational::one(), cap));
    let mut objective = Row::zero(dim + 1);
    objective.a[dim] = Rational::one();
    let lp = LpProblem::maximize(objective, lifted.iter().collect(), dim + 1);
    match solve_counted(&lp, counters) {
        LpOutcome::Optimal { value, mut point } => {
            point.truncate(dim);
            Ok((value, point))
        }
        LpOutcome::Infeasible { .. } => Err(Error::Infeasible),
        LpOutcome::Unbounded { .. } => Err(Error::Internal("capped interior LP is bounded")),
    }
}
