//! Exact primal simplex for `min / max  b₀ + c·x  s.t.  bᵢ + Aᵢ·x ≥ 0`, `x`
//! free.
//!
//! The solver keeps a dictionary in which the decision variables are basic
//! and `d` slack variables (or decision variables that no constraint can
//! pivot on) are nonbasic. Instead of updating the whole dictionary after
//! every pivot it keeps only the `d × d` matrix of the nonbasic rows and
//! prices the basic rows on demand; pivot selection is exactly that of a
//! dictionary method. Bland's least-index rule is used for both the
//! entering and the leaving variable, with the decision variables
//! `x₁ … x_d` ordered before the slacks `s₁ … s_m`.
//!
//! Phase I is Chvátal's auxiliary-variable construction on the same
//! machinery. Equations are not supported; substitute them out first.

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{invert, Echelon};
use crate::rational::{denominator_lcm, dot, primitive_integers, Rational};
use crate::row::Row;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug)]
pub struct LpProblem<'a> {
    /// `b₀ + c·x`.
    pub objective: Row,
    pub sense: Sense,
    /// Rows meaning `bᵢ + Aᵢ·x ≥ 0`.
    pub constraints: Vec<&'a Row>,
    pub dim: usize,
}

impl<'a> LpProblem<'a> {
    pub fn minimize(objective: Row, constraints: Vec<&'a Row>, dim: usize) -> Self {
        LpProblem {
            objective,
            sense: Sense::Minimize,
            constraints,
            dim,
        }
    }

    pub fn maximize(objective: Row, constraints: Vec<&'a Row>, dim: usize) -> Self {
        LpProblem {
            objective,
            sense: Sense::Maximize,
            constraints,
            dim,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    /// `point` is feasible and `direction` is an improving ray.
    Unbounded {
        point: Vec<Rational>,
        direction: Vec<Rational>,
    },
    /// Farkas multipliers `yᵢ ≥ 0` over the constraints with
    /// `Σ yᵢ Aᵢ = 0` and `Σ yᵢ bᵢ < 0`.
    Infeasible { certificate: Vec<(usize, Rational)> },
}

impl LpOutcome {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Unbounded { .. } => LpStatus::Unbounded,
            LpOutcome::Infeasible { .. } => LpStatus::Infeasible,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Counters shared between concurrent solves.
#[derive(Debug, Default)]
pub struct LpCounters {
    solved: AtomicUsize,
    pivots: AtomicUsize,
    max_constraints: AtomicUsize,
}

impl LpCounters {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn solved(&self) -> usize {
        self.solved.load(Ordering::Relaxed)
    }

    pub fn pivots(&self) -> usize {
        self.pivots.load(Ordering::Relaxed)
    }

    /// Largest constraint count of any LP solved so far.
    pub fn max_constraints(&self) -> usize {
        self.max_constraints.load(Ordering::Relaxed)
    }

    fn record(&self, constraints: usize, pivots: usize) {
        self.solved.fetch_add(1, Ordering::Relaxed);
        self.pivots.fetch_add(pivots, Ordering::Relaxed);
        self.max_constraints
            .fetch_max(constraints, Ordering::Relaxed);
    }
}

pub fn solve(p: &LpProblem<'_>) -> LpOutcome {
    solve_counted(p, None)
}

pub fn solve_counted(p: &LpProblem<'_>, counters: Option<&LpCounters>) -> LpOutcome {
    let mut pivots = 0;
    let out = run(p, &mut pivots);
    if let Some(c) = counters {
        c.record(p.constraints.len(), pivots);
    }
    out
}

/// Checks the witness carried by `out` by direct substitution.
pub fn verify(p: &LpProblem<'_>, out: &LpOutcome) -> bool {
    let zero = Rational::zero();
    let feasible =
        |x: &[Rational]| x.len() == p.dim && p.constraints.iter().all(|r| r.eval(x) >= zero);
    match out {
        LpOutcome::Optimal { value, point } => feasible(point) && &p.objective.eval(point) == value,
        LpOutcome::Unbounded { point, direction } => {
            if direction.len() != p.dim || !feasible(point) {
                return false;
            }
            if p.constraints
                .iter()
                .any(|r| r.eval_direction(direction) < zero)
            {
                return false;
            }
            let rate = p.objective.eval_direction(direction);
            match p.sense {
                Sense::Minimize => rate < zero,
                Sense::Maximize => rate > zero,
            }
        }
        LpOutcome::Infeasible { certificate } => {
            let mut sum = Row::zero(p.dim);
            for (i, y) in certificate {
                if y.is_negative() || *i >= p.constraints.len() {
                    return false;
                }
                sum.add_scaled(p.constraints[*i], y);
            }
            sum.coefficients_zero() && sum.b.is_negative()
        }
    }
}

/// Constraint row scaled by a positive factor to primitive integers.
#[derive(Clone, Debug)]
struct IntRow {
    b: BigInt,
    a: Vec<BigInt>,
}

impl IntRow {
    /// Returns the row and the factor it was multiplied by.
    fn from_row(row: &Row) -> (IntRow, Rational) {
        let mut ints = primitive_integers(row.entries()).into_iter();
        let b = ints.next().expect("constant term");
        let a: Vec<BigInt> = ints.collect();
        let scale = row
            .entries()
            .zip(core::iter::once(&b).chain(a.iter()))
            .find(|(q, _)| !q.is_zero())
            .map(|(q, n)| Rational::from_integer(n.clone()) / q)
            .unwrap_or_else(Rational::one);
        (IntRow { b, a }, scale)
    }

    fn dot(&self, v: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (u, w) in self.a.iter().zip(v) {
            if !u.is_zero() && !w.is_zero() {
                acc += u * w;
            }
        }
        acc
    }
}

/// A nonbasic variable of the dictionary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Nonbasic {
    /// Decision variable `x_j` held at zero; no constraint row could be
    /// pivoted on it, so it spans a lineality direction.
    Free(usize),
    /// Slack of constraint row `i`, held at zero.
    Slack(usize),
}

impl Nonbasic {
    fn index(self, n: usize) -> usize {
        match self {
            Nonbasic::Free(j) => j,
            Nonbasic::Slack(i) => n + i,
        }
    }
}

enum Phase {
    Optimal {
        x: Vec<Rational>,
        reduced: Vec<Rational>,
    },
    Unbounded {
        x: Vec<Rational>,
        dir: Vec<Rational>,
    },
}

struct Dictionary<'r> {
    n: usize,
    rows: &'r [IntRow],
    nonbasic: Vec<Nonbasic>,
    in_nonbasic: Vec<bool>,
}

impl<'r> Dictionary<'r> {
    fn new(n: usize, rows: &'r [IntRow], nonbasic: Vec<Nonbasic>) -> Self {
        let mut in_nonbasic = vec![false; rows.len()];
        for v in &nonbasic {
            if let Nonbasic::Slack(i) = v {
                in_nonbasic[*i] = true;
            }
        }
        Dictionary {
            n,
            rows,
            nonbasic,
            in_nonbasic,
        }
    }

    fn matrix(&self) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let mut m = Vec::with_capacity(self.n);
        let mut rhs = Vec::with_capacity(self.n);
        for v in &self.nonbasic {
            match *v {
                Nonbasic::Free(j) => {
                    let mut r = vec![Rational::zero(); self.n];
                    r[j] = Rational::one();
                    m.push(r);
                    rhs.push(Rational::zero());
                }
                Nonbasic::Slack(i) => {
                    let row = &self.rows[i];
                    m.push(row.a.iter().cloned().map(Rational::from_integer).collect());
                    rhs.push(Rational::from_integer(-&row.b));
                }
            }
        }
        (m, rhs)
    }

    /// Current basic solution and the inverse of the nonbasic matrix.
    fn solution(&self) -> (Vec<Rational>, Vec<Vec<Rational>>) {
        let (m, rhs) = self.matrix();
        let inv = invert(&m).expect("nonbasic rows stay linearly independent");
        let x = inv.iter().map(|r| dot(r, &rhs)).collect();
        (x, inv)
    }

    /// Slack values at `x` scaled by the common positive denominator of `x`.
    fn scaled_point(x: &[Rational]) -> (Vec<BigInt>, BigInt) {
        let den = denominator_lcm(x.iter());
        let num = x
            .iter()
            .map(|v| {
                if v.denom().is_one() {
                    v.numer() * &den
                } else {
                    v.numer() * (&den / v.denom())
                }
            })
            .collect();
        (num, den)
    }

    fn optimize(&mut self, cost: &[Rational], pivots: &mut usize) -> Phase {
        loop {
            let (x, inv) = self.solution();
            let n = self.n;
            // Reduced costs: r_p = c · (column p of inv).
            let reduced: Vec<Rational> = (0..n)
                .map(|p| {
                    let mut acc = Rational::zero();
                    for k in 0..n {
                        if !cost[k].is_zero() && !inv[k][p].is_zero() {
                            acc += &cost[k] * &inv[k][p];
                        }
                    }
                    acc
                })
                .collect();
            let entering = (0..n)
                .filter(|&p| match self.nonbasic[p] {
                    Nonbasic::Free(_) => !reduced[p].is_zero(),
                    Nonbasic::Slack(_) => reduced[p].is_negative(),
                })
                .min_by_key(|&p| self.nonbasic[p].index(n));
            let Some(p) = entering else {
                return Phase::Optimal { x, reduced };
            };
            let flip = reduced[p].is_positive();
            let dir: Vec<Rational> = (0..n)
                .map(|k| if flip { -&inv[k][p] } else { inv[k][p].clone() })
                .collect();

            let dnum = primitive_integers(dir.iter());
            let (xnum, xden) = Self::scaled_point(&x);
            // Minimum ratio slack / (-rate) over rows whose slack decreases.
            let mut best: Option<(usize, BigInt, BigInt)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if self.in_nonbasic[i] {
                    continue;
                }
                let rate = row.dot(&dnum);
                if !rate.is_negative() {
                    continue;
                }
                let slack = &row.b * &xden + row.dot(&xnum);
                let neg_rate = -rate;
                let better = match &best {
                    None => true,
                    Some((_, s, r)) => &slack * r < s * &neg_rate,
                };
                if better {
                    best = Some((i, slack, neg_rate));
                }
            }
            let Some((leave, _, _)) = best else {
                return Phase::Unbounded { x, dir };
            };
            if let Nonbasic::Slack(old) = self.nonbasic[p] {
                self.in_nonbasic[old] = false;
            }
            self.nonbasic[p] = Nonbasic::Slack(leave);
            self.in_nonbasic[leave] = true;
            *pivots += 1;
        }
    }
}

/// Initial dictionary: pivot every decision variable into the basis in
/// least-index order, leaving the ones no row can pivot on nonbasic.
fn initial_nonbasic(n: usize, rows: &[IntRow]) -> Vec<Nonbasic> {
    let mut ech = Echelon::new();
    let mut nonbasic = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if nonbasic.len() == n {
            break;
        }
        if row.a.iter().all(Zero::is_zero) {
            continue;
        }
        let v: Vec<Rational> = row.a.iter().cloned().map(Rational::from_integer).collect();
        if ech.insert(&v) {
            nonbasic.push(Nonbasic::Slack(i));
        }
    }
    for j in 0..n {
        if nonbasic.len() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        if ech.insert(&e) {
            nonbasic.push(Nonbasic::Free(j));
        }
    }
    nonbasic
}

fn run(p: &LpProblem<'_>, pivots: &mut usize) -> LpOutcome {
    let n = p.dim;
    let (rows, scales): (Vec<IntRow>, Vec<Rational>) =
        p.constraints.iter().map(|r| IntRow::from_row(r)).unzip();
    let m = rows.len();
    let cost: Vec<Rational> = match p.sense {
        Sense::Minimize => p.objective.a.clone(),
        Sense::Maximize => p.objective.a.iter().map(|v| -v).collect(),
    };

    let mut nonbasic = initial_nonbasic(n, &rows);

    // Feasibility of the starting dictionary.
    let start = Dictionary::new(n, &rows, nonbasic.clone());
    let (x0, _) = start.solution();
    let (xnum, xden) = Dictionary::scaled_point(&x0);
    let mut worst: Option<(usize, BigInt)> = None;
    for (i, row) in rows.iter().enumerate() {
        let s = &row.b * &xden + row.dot(&xnum);
        if s.is_negative() && worst.as_ref().map_or(true, |(_, w)| s < *w) {
            worst = Some((i, s));
        }
    }

    if let Some((most_negative, _)) = worst {
        // Phase I: add t ≥ 0 to every basic row and minimize t. The
        // auxiliary variable enters in place of the most infeasible row;
        // leaving t out of the nonbasic rows keeps its coefficient 1 in
        // every basic row, so that pivot is always valid.
        let start_nonbasic: Vec<bool> = start.in_nonbasic.clone();
        let mut aux: Vec<IntRow> = rows
            .iter()
            .zip(&start_nonbasic)
            .map(|(r, &nb)| {
                let mut a = r.a.clone();
                a.push(if nb { BigInt::zero() } else { BigInt::one() });
                IntRow { b: r.b.clone(), a }
            })
            .collect();
        let mut t_row = vec![BigInt::zero(); n + 1];
        t_row[n] = BigInt::one();
        aux.push(IntRow {
            b: BigInt::zero(),
            a: t_row,
        });
        let mut aux_nonbasic = nonbasic.clone();
        aux_nonbasic.push(Nonbasic::Slack(most_negative));
        let mut dict = Dictionary::new(n + 1, &aux, aux_nonbasic);
        let mut aux_cost = vec![Rational::zero(); n + 1];
        aux_cost[n] = Rational::one();
        let Phase::Optimal { x, reduced } = dict.optimize(&aux_cost, pivots) else {
            unreachable!("auxiliary problem is bounded below by t >= 0");
        };
        if x[n].is_positive() {
            let certificate = dict
                .nonbasic
                .iter()
                .zip(&reduced)
                .filter_map(|(v, y)| match *v {
                    Nonbasic::Slack(i) if i < m && !y.is_zero() => Some((i, y * &scales[i])),
                    _ => None,
                })
                .collect::<Vec<_>>();
            let mut certificate = certificate;
            certificate.sort_by_key(|&(i, _)| i);
            return LpOutcome::Infeasible { certificate };
        }
        // Drop t from the dictionary: remove the t ≥ 0 row if it is
        // nonbasic, otherwise the first slack whose removal keeps the
        // remaining rows independent.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by_key(|&q| dict.nonbasic[q].index(n + 1));
        let drop = if let Some(q) = dict.nonbasic.iter().position(|v| *v == Nonbasic::Slack(m)) {
            q
        } else {
            order
                .into_iter()
                .find(|&q| {
                    matches!(dict.nonbasic[q], Nonbasic::Slack(_)) && {
                        let mut ech = Echelon::new();
                        dict.nonbasic
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != q)
                            .all(|(_, v)| {
                                let r: Vec<Rational> = match *v {
                                    Nonbasic::Free(j) => {
                                        let mut e = vec![Rational::zero(); n];
                                        e[j] = Rational::one();
                                        e
                                    }
                                    Nonbasic::Slack(i) => aux[i].a[..n]
                                        .iter()
                                        .cloned()
                                        .map(Rational::from_integer)
                                        .collect(),
                                };
                                ech.insert(&r)
                            })
                    }
                })
                .expect("some slack can leave the auxiliary dictionary")
        };
        nonbasic = dict
            .nonbasic
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != drop)
            .map(|(_, v)| *v)
            .collect();
    }

    let mut dict = Dictionary::new(n, &rows, nonbasic);
    match dict.optimize(&cost, pivots) {
        Phase::Optimal { x, .. } => LpOutcome::Optimal {
            value: p.objective.eval(&x),
            point: x,
        },
        Phase::Unbounded { x, dir } => LpOutcome::Unbounded {
            point: x,
            direction: dir,
        },
    }
}
