//! Brute-force reference implementations for tiny inputs.
//!
//! Vertices come from solving every `d`-subset of rows, extreme rays from
//! the null vector of every `(d-1)`-subset, classification from the sign of
//! a row over those vertices and rays. None of this touches the simplex
//! code, which is what makes it useful as ground truth. The size limits are
//! hard errors.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::classify::{RowClass, Verdict, Witness};
use crate::error::Error;
use crate::exec::Executor;
use crate::fm::ProjectionSpec;
use crate::linalg::{gcd_normalize, normalize_equation, null_space, rank, solve};
use crate::minrep::{minimum_representation_with, MinRepOptions};
use crate::rational::{dot, primitive_direction, Rational};
use crate::row::{Kind, Polyhedron, Row};

pub const MAX_DIM: usize = 6;
pub const MAX_ROWS: usize = 24;
/// Largest intermediate V-representation accepted by [`golden_square`].
pub const MAX_GOLDEN_VERTICES: usize = 5000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexList {
    /// Sorted, without duplicates.
    pub vertices: Vec<Vec<Rational>>,
    /// Extreme rays in primitive integer form, sorted.
    pub rays: Vec<Vec<Rational>>,
    /// For every vertex, the first row subset (lexicographic) whose
    /// equations pin it down.
    pub source_bases: Vec<Vec<usize>>,
}

fn guard(p: &Polyhedron) -> Result<(), Error> {
    if p.dim() > MAX_DIM {
        return Err(Error::GuardRail {
            what: "dimension",
            limit: MAX_DIM,
            found: p.dim(),
        });
    }
    if p.len() > MAX_ROWS {
        return Err(Error::GuardRail {
            what: "rows",
            limit: MAX_ROWS,
            found: p.len(),
        });
    }
    Ok(())
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        if idx[i] == i + n - k {
            return;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn in_recession_cone(p: &Polyhedron, r: &[Rational]) -> bool {
    p.rows().iter().enumerate().all(|(i, row)| {
        let v = row.eval_direction(r);
        if p.is_linearity(i) {
            v.is_zero()
        } else {
            !v.is_negative()
        }
    })
}

/// Vertices and extreme rays of a pointed H-polyhedron.
pub fn enumerate_vertices(p: &Polyhedron) -> Result<VertexList, Error> {
    if p.kind() != Kind::H {
        return Err(Error::NotInequalities);
    }
    guard(p)?;
    enumerate_unchecked(p)
}

fn enumerate_unchecked(p: &Polyhedron) -> Result<VertexList, Error> {
    let d = p.dim();
    let a: Vec<Vec<Rational>> = p.rows().iter().map(|r| r.a.clone()).collect();
    if rank(&a) < d {
        return Err(Error::NotPointed);
    }
    let mut found: BTreeMap<Vec<Rational>, Vec<usize>> = BTreeMap::new();
    for_each_subset(p.len(), d, |s| {
        let m: Vec<Vec<Rational>> = s.iter().map(|&i| a[i].clone()).collect();
        let rhs: Vec<Rational> = s.iter().map(|&i| -&p.row(i).b).collect();
        if let Some(x) = solve(&m, &rhs) {
            if !found.contains_key(&x) && p.contains(&x) {
                found.insert(x, s.to_vec());
            }
        }
    });
    let mut rays: BTreeSet<Vec<Rational>> = BTreeSet::new();
    if !found.is_empty() && d > 0 {
        for_each_subset(p.len(), d - 1, |s| {
            let m: Vec<Vec<Rational>> = s.iter().map(|&i| a[i].clone()).collect();
            let ns = null_space(&m, d);
            if ns.len() != 1 {
                return;
            }
            for r in [ns[0].clone(), ns[0].iter().map(|v| -v).collect()] {
                if in_recession_cone(p, &r) {
                    rays.insert(primitive_direction(&r));
                }
            }
        });
    }
    let (vertices, source_bases) = found.into_iter().unzip();
    Ok(VertexList {
        vertices,
        rays: rays.into_iter().collect(),
        source_bases,
    })
}

/// Classifies inequality `i` from the vertices and rays of the polyhedron
/// with row `i` removed.
pub fn naive_classify(p: &Polyhedron, i: usize) -> Result<RowClass, Error> {
    if p.kind() != Kind::H {
        return Err(Error::NotInequalities);
    }
    guard(p)?;
    if i >= p.len() {
        return Err(Error::RowIndex {
            index: i,
            rows: p.len(),
        });
    }
    if p.is_linearity(i) {
        return Err(Error::RowIsEquation { row: i });
    }
    let d = p.dim();
    let target = p.row(i);
    let mut rows: Vec<Row> = Vec::new();
    let mut lin = BTreeSet::new();
    for (k, r) in p.rows().iter().enumerate() {
        if k == i {
            continue;
        }
        if p.is_linearity(k) {
            lin.insert(rows.len());
        }
        rows.push(r.clone());
    }
    // Cut the lineality space away so the rest is pointed.
    let a: Vec<Vec<Rational>> = rows.iter().map(|r| r.a.clone()).collect();
    let lineality = null_space(&a, d);
    for l in &lineality {
        lin.insert(rows.len());
        rows.push(Row::new(Rational::zero(), l.clone()));
    }
    let q = Polyhedron::new(Kind::H, d, rows, lin)?;
    let vl = enumerate_unchecked(&q)?;
    let Some(anchor) = vl.vertices.first() else {
        return Err(Error::Infeasible);
    };

    let push_to_violation = |x: &[Rational], dir: &[Rational]| -> Vec<Rational> {
        let rate = target.eval_direction(dir);
        let v = target.eval(x);
        let step = (v + Rational::one()) / -rate;
        x.iter().zip(dir).map(|(u, w)| u + &step * w).collect()
    };

    if let Some(l) = lineality
        .iter()
        .find(|l| !target.eval_direction(l).is_zero())
    {
        let dir: Vec<Rational> = if target.eval_direction(l).is_negative() {
            l.clone()
        } else {
            l.iter().map(|v| -v).collect()
        };
        return Ok(RowClass::new(
            Verdict::NonRedundant,
            Some(Witness::Violating(push_to_violation(anchor, &dir))),
        ));
    }

    let values: Vec<Rational> = vl.vertices.iter().map(|v| target.eval(v)).collect();
    let (imin, zmin) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(k, v)| (k, v.clone()))
        .expect("at least one vertex");
    let (imax, zmax) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(k, v)| (k, v.clone()))
        .expect("at least one vertex");
    let descending = vl
        .rays
        .iter()
        .find(|r| target.eval_direction(r).is_negative());
    let ascending = vl
        .rays
        .iter()
        .any(|r| target.eval_direction(r).is_positive());

    if !ascending && zmax.is_zero() {
        return Ok(RowClass::new(
            Verdict::Linearity,
            Some(Witness::Extremum(vl.vertices[imax].clone())),
        ));
    }
    if let Some(r) = descending {
        return Ok(RowClass::new(
            Verdict::NonRedundant,
            Some(Witness::Violating(push_to_violation(anchor, r))),
        ));
    }
    let point = vl.vertices[imin].clone();
    Ok(if zmin.is_positive() {
        RowClass::new(Verdict::StronglyRedundant, Some(Witness::Extremum(point)))
    } else if zmin.is_zero() {
        RowClass::new(Verdict::WeaklyRedundant, Some(Witness::Extremum(point)))
    } else {
        RowClass::new(Verdict::NonRedundant, Some(Witness::Violating(point)))
    })
}

/// H-representation of the set generated by a V-representation, from the
/// extreme rays of the cone of valid inequalities.
///
/// Equations come first (in canonical sign), then inequalities sorted by
/// their normalized coefficients.
pub fn facets_of_generators(v: &Polyhedron) -> Result<Polyhedron, Error> {
    if v.kind() != Kind::V {
        return Err(Error::Internal(
            "facet enumeration expects a V-representation",
        ));
    }
    guard(v)?;
    let n = v.dim() + 1;
    let gens: Vec<Vec<Rational>> = v
        .rows()
        .iter()
        .map(|r| r.entries().cloned().collect())
        .collect();
    // Valid inequalities y = (b, a) satisfy g·y ≥ 0 for vertices and rays,
    // g·y = 0 for lineality generators.
    let equations = null_space(&gens, n);
    let mut rows: Vec<Row> = gens
        .iter()
        .map(|g| Row::new(Rational::zero(), g.clone()))
        .collect();
    let mut lin: BTreeSet<usize> = v.linearity().clone();
    for e in &equations {
        lin.insert(rows.len());
        rows.push(Row::new(Rational::zero(), e.clone()));
    }
    let cone = Polyhedron::new(Kind::H, n, rows, lin)?;
    let vl = enumerate_unchecked(&cone)?;

    let as_row = |y: &[Rational]| Row::new(y[0].clone(), y[1..].to_vec());
    let mut out: Vec<Row> = equations
        .iter()
        .map(|e| normalize_equation(&as_row(e)))
        .collect();
    let n_eq = out.len();
    let mut ineqs: Vec<Row> = vl
        .rays
        .iter()
        .map(|y| as_row(y))
        .filter(|r| !r.coefficients_zero())
        .map(|r| gcd_normalize(&r))
        .collect();
    ineqs.sort();
    ineqs.dedup();
    out.extend(ineqs);
    Polyhedron::new(Kind::H, v.dim(), out, (0..n_eq).collect())
}

/// Projection through the V side: H → V by vertex enumeration, drop the
/// eliminated coordinates, remove redundant generators, then V → H by
/// facet enumeration.
pub fn golden_square<E: Executor>(
    p: &Polyhedron,
    spec: &ProjectionSpec,
    exec: &E,
) -> Result<Polyhedron, Error> {
    if p.kind() != Kind::H {
        return Err(Error::NotInequalities);
    }
    if spec.dim() != p.dim() {
        return Err(Error::BadProjection);
    }
    let vl = enumerate_vertices(p)?;
    if vl.vertices.len() + vl.rays.len() > MAX_GOLDEN_VERTICES {
        return Err(Error::GuardRail {
            what: "generators",
            limit: MAX_GOLDEN_VERTICES,
            found: vl.vertices.len() + vl.rays.len(),
        });
    }
    if vl.vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    let keep = spec.keep();
    let pick = |x: &[Rational]| -> Vec<Rational> { keep.iter().map(|&j| x[j].clone()).collect() };
    let mut gens: Vec<Row> = Vec::new();
    for x in &vl.vertices {
        gens.push(Row::new(Rational::one(), pick(x)));
    }
    for r in &vl.rays {
        let pr = pick(r);
        if pr.iter().any(|v| !v.is_zero()) {
            gens.push(Row::new(Rational::zero(), primitive_direction(&pr)));
        }
    }
    gens.sort();
    gens.dedup();
    let q = Polyhedron::new(Kind::V, keep.len(), gens, BTreeSet::new())?;
    let report = minimum_representation_with(&q, &MinRepOptions::default(), exec)?;
    let reduced = crate::minrep::reduced_polyhedron(&q, &report);
    facets_of_generators(&reduced)
}

/// Whether two H-representations have the same rows up to positive
/// scaling and the choice of equation basis. Equations are brought to
/// reduced row echelon form and each inequality is reduced modulo them
/// before comparing, so an inequality plus a multiple of an equation
/// counts as the same row.
pub fn same_rows(p: &Polyhedron, q: &Polyhedron) -> bool {
    p.dim() == q.dim() && canonical_rows(p) == canonical_rows(q)
}

fn canonical_rows(p: &Polyhedron) -> (Vec<Row>, BTreeSet<Row>) {
    let d = p.dim();
    // Equations as [a₁ … a_d, b], reduced over the coefficient columns.
    let mut eqs: Vec<Vec<Rational>> = Vec::new();
    for i in p.linearity() {
        let r = p.row(*i);
        eqs.push(r.a.iter().chain(core::iter::once(&r.b)).cloned().collect());
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut top = 0;
    for col in 0..d {
        let Some(k) = (top..eqs.len()).find(|&k| !eqs[k][col].is_zero()) else {
            continue;
        };
        eqs.swap(top, k);
        let piv = eqs[top][col].clone();
        for v in eqs[top].iter_mut() {
            *v /= &piv;
        }
        let src = eqs[top].clone();
        for (k, row) in eqs.iter_mut().enumerate() {
            if k != top && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push((col, top));
        top += 1;
    }
    eqs.truncate(top);
    let eq_rows: Vec<Row> = eqs
        .iter()
        .map(|e| Row::new(e[d].clone(), e[..d].to_vec()))
        .collect();
    let mut ineq = BTreeSet::new();
    for i in p.inequality_indices() {
        let mut r = p.row(i).clone();
        for &(col, k) in &pivots {
            if !r.a[col].is_zero() {
                let f = -r.a[col].clone();
                r.add_scaled(&eq_rows[k], &f);
            }
        }
        ineq.insert(gcd_normalize(&r));
    }
    (eq_rows, ineq)
}

/// Value of `b + a·x` minimized over a vertex list, `None` when a ray makes
/// it unbounded below.
pub fn min_over(vl: &VertexList, row: &Row) -> Option<Rational> {
    if vl.rays.iter().any(|r| dot(&row.a, r).is_negative()) {
        return None;
    }
    vl.vertices.iter().map(|v| row.eval(v)).min()
}
