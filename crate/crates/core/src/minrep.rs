//! Minimum representations.
//!
//! The pipeline:
//!
//! 1. One Phase-I LP on the whole system decides emptiness.
//! 2. The declared equations are substituted out and an interior-point LP
//!    checks whether the remaining inequalities have an interior point.
//! 3. If not, every inequality is classified with the linearity check on;
//!    rows found to be linearities join the equations.
//! 4. The enlarged equation set is reduced to an independent subset, which
//!    is substituted out of the inequalities.
//! 5. The reduced inequalities are normalized and deduplicated.
//! 6. The rows whose status is still open are classified against the
//!    reduced, full-dimensional system.
//!
//! Every index in a [`MinRepReport`] is a row number of the input.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::clarkson::clarkson_rows;
use crate::classify::{classify_in, interior_in, RowClass, Verdict, Witness};
use crate::error::Error;
use crate::exec::Executor;
use crate::linalg::{dedup_rows, gaussian_reduce, gcd_normalize, Substitution};
use crate::lp::{solve_counted, LpCounters, LpOutcome, LpProblem};
use crate::rational::Rational;
use crate::row::{Kind, Polyhedron, Row};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Method {
    /// One LP per open row against the whole reduced system.
    #[default]
    Classic,
    /// LPs restricted to the rows certified non-redundant so far.
    Clarkson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinRepOptions {
    /// Look for hidden linearities. When off, the system is treated as if
    /// the declared equations were its whole affine hull.
    pub linearity_search: bool,
    pub method: Method,
    /// Re-run the interior-point LP on the final reduced system and fail if
    /// it has no interior point.
    pub check_full_dimension: bool,
}

impl Default for MinRepOptions {
    fn default() -> Self {
        MinRepOptions {
            linearity_search: true,
            method: Method::Classic,
            check_full_dimension: cfg!(debug_assertions),
        }
    }
}

/// Multipliers `μ` over input rows with `Σ μₖ rowₖ = (-1, 0, …, 0)` and
/// `μₖ ≥ 0` on inequality rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    pub multipliers: Vec<(usize, Rational)>,
}

impl InfeasibilityCertificate {
    pub fn check(&self, p: &Polyhedron) -> bool {
        let mut sum = Row::zero(p.dim());
        for (k, mu) in &self.multipliers {
            if *k >= p.len() || (mu.is_negative() && !p.is_linearity(*k)) {
                return false;
            }
            sum.add_scaled(p.row(*k), mu);
        }
        sum.coefficients_zero() && sum.b == -Rational::one()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinRepStats {
    pub lps_solved: usize,
    pub pivots: usize,
    /// Largest constraint count of any LP, the emptiness check included.
    pub max_lp_rows: usize,
    /// Largest constraint count of an LP solved by the Clarkson method.
    pub max_clarkson_lp_rows: usize,
    /// Whether the inequalities had an interior point before the
    /// linearity search.
    pub full_dimensional: bool,
    /// Rows in the reduced, deduplicated system.
    pub reduced_rows: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinRepReport {
    pub feasible: bool,
    pub certificate: Option<InfeasibilityCertificate>,
    /// Independent equations of the minimum representation.
    pub final_linearity: BTreeSet<usize>,
    /// Inequalities of the minimum representation.
    pub final_nonredundant: BTreeSet<usize>,
    /// Verdict and witness of every classified inequality that is not a
    /// duplicate. Witness points are in input coordinates.
    pub classes: BTreeMap<usize, RowClass>,
    /// `(equation row, eliminated column)` of the final substitution.
    pub substitutions: Vec<(usize, usize)>,
    /// Removed copy → kept copy.
    pub duplicate_of: BTreeMap<usize, usize>,
    /// Equations (declared or discovered) implied by `final_linearity`.
    pub dependent_equations: BTreeSet<usize>,
    /// All-zero rows.
    pub vacuous: BTreeSet<usize>,
    /// Dimension of the internal H-system (of the homogenized cone for
    /// V-input).
    pub dimension: usize,
    pub stats: MinRepStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disposition {
    Linearity,
    NonRedundant,
    Redundant(Verdict),
    Duplicate(usize),
    DependentEquation,
    Vacuous,
    /// Nothing is decided for rows of an empty polyhedron.
    Undecided,
}

impl MinRepReport {
    pub fn disposition(&self, i: usize) -> Disposition {
        if self.final_linearity.contains(&i) {
            Disposition::Linearity
        } else if self.final_nonredundant.contains(&i) {
            Disposition::NonRedundant
        } else if let Some(&k) = self.duplicate_of.get(&i) {
            Disposition::Duplicate(k)
        } else if self.dependent_equations.contains(&i) {
            Disposition::DependentEquation
        } else if self.vacuous.contains(&i) {
            Disposition::Vacuous
        } else if let Some(c) = self.classes.get(&i) {
            Disposition::Redundant(c.verdict)
        } else {
            Disposition::Undecided
        }
    }

    /// Inequalities classified as redundant.
    pub fn redundant(&self) -> BTreeSet<usize> {
        self.classes
            .iter()
            .filter(|(_, c)| c.verdict.is_redundant())
            .map(|(&i, _)| i)
            .collect()
    }
}

/// Lifts a V-representation to the homogeneous inequality system
/// `δ x₀ + v·x ≥ 0` over `d + 1` variables. A generator is redundant
/// exactly when its lifted row is.
pub fn v_to_internal(p: &Polyhedron) -> Result<Polyhedron, Error> {
    if p.kind() != Kind::V {
        return Err(Error::Internal("v_to_internal expects a V-representation"));
    }
    let mut rows = Vec::with_capacity(p.len());
    for (i, r) in p.rows().iter().enumerate() {
        if !(r.b.is_zero() || r.b.is_one()) {
            return Err(Error::GeneratorLead { row: i });
        }
        rows.push(Row::new(Rational::zero(), r.entries().cloned().collect()));
    }
    Polyhedron::new(Kind::H, p.dim() + 1, rows, p.linearity().clone())
}

/// [`minimum_representation_with`] with default options.
pub fn minimum_representation<E: Executor>(
    p: &Polyhedron,
    exec: &E,
) -> Result<MinRepReport, Error> {
    minimum_representation_with(p, &MinRepOptions::default(), exec)
}

pub fn minimum_representation_with<E: Executor>(
    p: &Polyhedron,
    opts: &MinRepOptions,
    exec: &E,
) -> Result<MinRepReport, Error> {
    let lifted;
    let p = match p.kind() {
        Kind::H => p,
        Kind::V => {
            lifted = v_to_internal(p)?;
            &lifted
        }
    };
    let counters = LpCounters::new();
    let mut rep = run(p, opts, exec, &counters)?;
    rep.stats.lps_solved = counters.solved();
    rep.stats.pivots = counters.pivots();
    rep.stats.max_lp_rows = counters.max_constraints();
    Ok(rep)
}

fn run<E: Executor>(
    p: &Polyhedron,
    opts: &MinRepOptions,
    exec: &E,
    counters: &LpCounters,
) -> Result<MinRepReport, Error> {
    let d = p.dim();
    let mut rep = MinRepReport {
        feasible: true,
        ..MinRepReport::default()
    };
    for (i, r) in p.rows().iter().enumerate() {
        if r.is_zero() {
            rep.vacuous.insert(i);
        }
    }
    let declared: Vec<usize> = p
        .linearity()
        .iter()
        .copied()
        .filter(|i| !rep.vacuous.contains(i))
        .collect();
    let ineqs: Vec<usize> = p
        .inequality_indices()
        .filter(|i| !rep.vacuous.contains(i))
        .collect();

    if let Some(cert) = emptiness_check(p, &declared, &ineqs, counters) {
        rep.feasible = false;
        rep.certificate = Some(cert);
        return Ok(rep);
    }

    let decl_rows: Vec<Row> = declared.iter().map(|&i| p.row(i).clone()).collect();
    let sub0 = Substitution::from_reduction(&gaussian_reduce(&decl_rows), d);
    let rdim0 = sub0.reduced_dim();

    let mut found_lin: Vec<usize> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut active_rows: Vec<Row> = Vec::new();
    for &i in &ineqs {
        let r = sub0.reduce_row(p.row(i));
        if !r.coefficients_zero() {
            active.push(i);
            active_rows.push(r);
        } else if r.b.is_positive() {
            rep.classes
                .insert(i, RowClass::new(Verdict::StronglyRedundant, None));
        } else if r.b.is_zero() {
            rep.classes
                .insert(i, RowClass::new(Verdict::Linearity, None));
            found_lin.push(i);
        } else {
            return Err(Error::Internal(
                "negative constant row in a feasible system",
            ));
        }
    }

    let mut interior = None;
    let full = if opts.linearity_search {
        let (depth, y) = interior_in(&active_rows, rdim0, Some(counters))?;
        let full = depth.is_positive();
        if full {
            interior = Some(y);
        }
        full
    } else {
        true
    };
    rep.stats.full_dimensional = full;

    // Rows whose verdict must be settled in the reduced system.
    let mut open: BTreeSet<usize> = BTreeSet::new();
    if full {
        open.extend(active.iter().copied());
    } else {
        let batch = exec.batch((0..active.len()).collect());
        let results = exec.map_rows(&batch, |k| {
            classify_in(&active_rows, rdim0, k, true, Some(counters))
        })?;
        for (k, c) in results {
            let i = active[k];
            match c.verdict {
                Verdict::Linearity => found_lin.push(i),
                Verdict::WeaklyRedundant => {
                    open.insert(i);
                }
                _ => {}
            }
            let c = RowClass::new(
                c.verdict,
                c.witness.map(|w| w.map_point(|y| sub0.lift_point(y))),
            );
            rep.classes.insert(i, c);
        }
    }

    let mut all_lin: Vec<usize> = declared.iter().copied().chain(found_lin).collect();
    all_lin.sort_unstable();
    let lin_rows: Vec<Row> = all_lin.iter().map(|&i| p.row(i).clone()).collect();
    let red = gaussian_reduce(&lin_rows);
    if red.inconsistent.is_some() {
        return Err(Error::Internal(
            "inconsistent equations in a feasible system",
        ));
    }
    rep.final_linearity = red.independent.iter().map(|&k| all_lin[k]).collect();
    rep.dependent_equations = red.dependent.iter().map(|&k| all_lin[k]).collect();
    rep.substitutions = red.pivots.iter().map(|&(k, c)| (all_lin[k], c)).collect();
    let sub = Substitution::from_reduction(&red, d);
    let rdim = sub.reduced_dim();
    rep.dimension = rdim;

    let mut cand: Vec<usize> = Vec::new();
    let mut cand_rows: Vec<Row> = Vec::new();
    for &i in &active {
        if rep
            .classes
            .get(&i)
            .is_some_and(|c| c.verdict == Verdict::Linearity)
        {
            continue;
        }
        let r = sub.reduce_row(p.row(i));
        if r.coefficients_zero() {
            if !r.b.is_positive() {
                return Err(Error::Internal("unreported linearity"));
            }
            let old = rep.classes.remove(&i).and_then(|c| c.witness);
            rep.classes
                .insert(i, RowClass::new(Verdict::StronglyRedundant, old));
            open.remove(&i);
            continue;
        }
        cand.push(i);
        cand_rows.push(gcd_normalize(&r));
    }

    let dedup = dedup_rows(&cand_rows);
    for (&k, &rep_k) in &dedup.duplicate_of {
        rep.duplicate_of.insert(cand[k], cand[rep_k]);
        rep.classes.remove(&cand[k]);
        open.remove(&cand[k]);
    }
    let j_idx: Vec<usize> = dedup.kept.iter().map(|&k| cand[k]).collect();
    let j_rows: Vec<Row> = dedup.kept.iter().map(|&k| cand_rows[k].clone()).collect();
    rep.stats.reduced_rows = j_rows.len();

    let needs_interior = opts.method == Method::Clarkson || opts.check_full_dimension;
    let same_coordinates = sub.free_columns() == sub0.free_columns();
    let j_interior = match interior.filter(|_| same_coordinates) {
        Some(y) => Some(y),
        None if needs_interior => {
            let (depth, y) = interior_in(&j_rows, rdim, Some(counters))?;
            if depth.is_positive() {
                Some(y)
            } else if opts.method == Method::Clarkson {
                return Err(Error::NotFullDimensional);
            } else if opts.linearity_search {
                return Err(Error::Internal("hidden linearity survived the reduction"));
            } else {
                None
            }
        }
        None => None,
    };

    let verdicts: BTreeMap<usize, RowClass> = match opts.method {
        Method::Classic => {
            let keys: Vec<usize> = (0..j_idx.len())
                .filter(|&k| open.contains(&j_idx[k]))
                .collect();
            let batch = exec.batch(keys);
            let full_known = opts.linearity_search || j_interior.is_some();
            match Slice::new(&j_rows, rdim).filter(|_| full_known) {
                Some(sl) => exec.map_rows(&batch, |k| sl.classify(k, Some(counters)))?,
                None => exec.map_rows(&batch, |k| {
                    classify_in(&j_rows, rdim, k, false, Some(counters))
                })?,
            }
        }
        Method::Clarkson => {
            let y = j_interior.expect("interior point computed above");
            let out = clarkson_rows(&j_rows, rdim, &y, Some(counters))?;
            rep.stats.max_clarkson_lp_rows = out.max_lp_rows;
            out.classes.into_iter().enumerate().collect()
        }
    };
    for (k, c) in verdicts {
        let c = RowClass::new(
            c.verdict,
            c.witness.map(|w| w.map_point(|y| sub.lift_point(y))),
        );
        rep.classes.insert(j_idx[k], c);
    }
    rep.final_nonredundant = j_idx
        .iter()
        .copied()
        .filter(|i| rep.classes[i].verdict == Verdict::NonRedundant)
        .collect();
    Ok(rep)
}

/// Affine slice `c·y = 1` of a homogeneous system, `c` the sum of its rows.
///
/// On a cone every LP sits at the apex, where the simplex method stalls in
/// degenerate pivots. When the cone has an interior point, `c` lies in the
/// relative interior of the cone spanned by the rows, and a row is redundant
/// on the slice exactly when it is redundant on the cone.
struct Slice {
    sub: Substitution,
    rows: Vec<Row>,
}

impl Slice {
    fn new(rows: &[Row], dim: usize) -> Option<Slice> {
        if rows.len() < 2 || dim == 0 || rows.iter().any(|r| !r.b.is_zero()) {
            return None;
        }
        let mut c = Row::zero(dim);
        for r in rows {
            c.add_scaled(r, &Rational::one());
        }
        if c.coefficients_zero() {
            return None;
        }
        c.b = -Rational::one();
        let sub = Substitution::from_reduction(&gaussian_reduce(&[c]), dim);
        let rows = rows.iter().map(|r| sub.reduce_row(r)).collect();
        Some(Slice { sub, rows })
    }

    /// Verdicts refer to the cone, where no row is strongly redundant.
    fn classify(&self, k: usize, counters: Option<&LpCounters>) -> Result<RowClass, Error> {
        let c = classify_in(&self.rows, self.sub.reduced_dim(), k, false, counters)?;
        let lift = |w: Witness| w.map_point(|y| self.sub.lift_point(y));
        Ok(match c.verdict {
            Verdict::NonRedundant => RowClass::new(Verdict::NonRedundant, c.witness.map(lift)),
            Verdict::StronglyRedundant => RowClass::new(
                Verdict::WeaklyRedundant,
                Some(Witness::Extremum(vec![Rational::zero(); self.sub.dim()])),
            ),
            _ => RowClass::new(Verdict::WeaklyRedundant, c.witness.map(lift)),
        })
    }
}

/// Phase I on the whole system, with every equation split into two
/// opposite inequalities.
fn emptiness_check(
    p: &Polyhedron,
    equations: &[usize],
    inequalities: &[usize],
    counters: &LpCounters,
) -> Option<InfeasibilityCertificate> {
    let negated: Vec<Row> = equations.iter().map(|&i| p.row(i).negated()).collect();
    let mut origin: Vec<(usize, bool)> = Vec::new();
    let mut cons: Vec<&Row> = Vec::new();
    for &i in inequalities {
        origin.push((i, false));
        cons.push(p.row(i));
    }
    for (k, &i) in equations.iter().enumerate() {
        origin.push((i, false));
        cons.push(p.row(i));
        origin.push((i, true));
        cons.push(&negated[k]);
    }
    let lp = LpProblem::minimize(Row::zero(p.dim()), cons, p.dim());
    let LpOutcome::Infeasible { certificate } = solve_counted(&lp, Some(counters)) else {
        return None;
    };
    let mut sum = Rational::zero();
    for (k, y) in &certificate {
        sum += y * &lp.constraints[*k].b;
    }
    let scale = -(Rational::one() / sum);
    let mut mult: BTreeMap<usize, Rational> = BTreeMap::new();
    for (k, y) in certificate {
        let (i, neg) = origin[k];
        let v = y * &scale;
        *mult.entry(i).or_insert_with(Rational::zero) += if neg { -v } else { v };
    }
    Some(InfeasibilityCertificate {
        multipliers: mult.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
    })
}

/// The rows of the minimum representation, unchanged and in input order,
/// with the kept equations marked as linearities.
pub fn reduced_polyhedron(p: &Polyhedron, report: &MinRepReport) -> Polyhedron {
    let keep: BTreeSet<usize> = report
        .final_linearity
        .union(&report.final_nonredundant)
        .copied()
        .collect();
    let mut rows = Vec::with_capacity(keep.len());
    let mut lin = BTreeSet::new();
    for &i in &keep {
        if report.final_linearity.contains(&i) {
            lin.insert(rows.len());
        }
        rows.push(p.row(i).clone());
    }
    Polyhedron::new(p.kind(), p.dim(), rows, lin).expect("subset of a valid polyhedron")
}

/// A report check that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub row: Option<usize>,
    pub reason: &'static str,
}

fn mismatch(row: Option<usize>, reason: &'static str) -> Mismatch {
    Mismatch { row, reason }
}

/// Checks a report against its input by direct substitution: the
/// infeasibility certificate, the row partition, independence of the kept
/// equations and every witness point.
pub fn verify_report(p: &Polyhedron, report: &MinRepReport) -> Result<(), Mismatch> {
    let lifted;
    let p = match p.kind() {
        Kind::H => p,
        Kind::V => {
            lifted = v_to_internal(p).map_err(|_| mismatch(None, "invalid V-representation"))?;
            &lifted
        }
    };
    if !report.feasible {
        return match &report.certificate {
            Some(c) if c.check(p) => Ok(()),
            _ => Err(mismatch(None, "infeasibility certificate does not check")),
        };
    }
    for i in 0..p.len() {
        let n = [
            report.final_linearity.contains(&i),
            report.final_nonredundant.contains(&i),
            report
                .classes
                .get(&i)
                .is_some_and(|c| c.verdict.is_redundant()),
            report.duplicate_of.contains_key(&i),
            report.dependent_equations.contains(&i),
            report.vacuous.contains(&i),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if n != 1 {
            return Err(mismatch(Some(i), "row is not in exactly one category"));
        }
    }
    let lin: Vec<Row> = report
        .final_linearity
        .iter()
        .map(|&i| p.row(i).clone())
        .collect();
    if !gaussian_reduce(&lin).dependent.is_empty() {
        return Err(mismatch(None, "kept equations are dependent"));
    }
    for (&i, c) in &report.classes {
        let Some(w) = &c.witness else { continue };
        let x = w.point();
        if x.len() != p.dim() {
            return Err(mismatch(Some(i), "witness has the wrong length"));
        }
        let v = p.row(i).eval(x);
        let ok = match (c.verdict, w) {
            (Verdict::NonRedundant, Witness::Violating(_)) => {
                v.is_negative() && satisfies_except(p, x, i, &report.duplicate_of)
            }
            (Verdict::NonRedundant, Witness::BoundaryHit(_))
            | (Verdict::Linearity, Witness::Extremum(_))
            | (Verdict::WeaklyRedundant, Witness::Extremum(_)) => v.is_zero() && p.contains(x),
            (Verdict::StronglyRedundant, Witness::Extremum(_)) => v.is_positive() && p.contains(x),
            _ => false,
        };
        if !ok {
            return Err(mismatch(Some(i), "witness does not check"));
        }
    }
    Ok(())
}

/// Copies of `skip` are violated together with it.
fn satisfies_except(
    p: &Polyhedron,
    x: &[Rational],
    skip: usize,
    duplicate_of: &BTreeMap<usize, usize>,
) -> bool {
    p.rows().iter().enumerate().all(|(k, r)| {
        if k == skip || duplicate_of.get(&k) == Some(&skip) {
            return true;
        }
        let v = r.eval(x);
        if p.is_linearity(k) {
            v.is_zero()
        } else {
            !v.is_negative()
        }
    })
}
