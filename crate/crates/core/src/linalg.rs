//! Row normalization, duplicate detection, Gaussian elimination and
//! equation substitution over the rationals.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::{primitive_integers, Rational};
use crate::row::Row;

/// Divides a row by a positive scalar so that it becomes the integer row
/// with content 1. The sign is never changed, so the half-space is
/// preserved. All-zero rows are returned unchanged.
pub fn gcd_normalize(row: &Row) -> Row {
    let mut ints = primitive_integers(row.entries()).into_iter();
    let b = Rational::from_integer(ints.next().expect("row has a constant term"));
    Row {
        b,
        a: ints.map(Rational::from_integer).collect(),
    }
}

/// Canonical form of an equation: [`gcd_normalize`], then flip the sign so
/// that the first nonzero entry (scanning `b`, then `a₁ … a_d`) is positive.
pub fn normalize_equation(row: &Row) -> Row {
    let r = gcd_normalize(row);
    let flip = r
        .entries()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative());
    if flip {
        r.negated()
    } else {
        r
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dedup {
    /// Smallest index of every equivalence class, ascending.
    pub kept: Vec<usize>,
    /// Removed index → kept representative.
    pub duplicate_of: BTreeMap<usize, usize>,
}

/// Finds identical rows by sorting. Rows must already be normalized
/// ([`gcd_normalize`] for inequalities, [`normalize_equation`] for
/// equations) so that equal rows are exactly the positive multiples.
pub fn dedup_rows(rows: &[Row]) -> Dedup {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&i, &j| rows[i].cmp(&rows[j]).then(i.cmp(&j)));
    let mut out = Dedup::default();
    let mut rep: Option<usize> = None;
    for &i in &order {
        match rep {
            Some(r) if rows[r] == rows[i] => {
                out.duplicate_of.insert(i, r);
            }
            _ => {
                rep = Some(i);
                out.kept.push(i);
            }
        }
    }
    out.kept.sort_unstable();
    out
}

/// Result of [`gaussian_reduce`] on a list of equations `b + a·x = 0`.
/// All indices are positions in the input slice.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reduction {
    /// Greedy maximal independent subset in input order.
    pub independent: Vec<usize>,
    /// Rows implied by earlier independent rows.
    pub dependent: Vec<usize>,
    /// `(row, column)` pairs; the column is the first nonzero coefficient
    /// of the row after reduction against earlier rows.
    pub pivots: Vec<(usize, usize)>,
    /// For every consistent dependent row, coefficients over independent
    /// rows that reconstruct it exactly.
    pub combinations: BTreeMap<usize, Vec<(usize, Rational)>>,
    /// First row whose reduction yields `0 = c` with `c ≠ 0`, together with
    /// multipliers `μ` such that `Σ μ_k row_k = (-1, 0, …, 0)`.
    pub inconsistent: Option<(usize, Vec<(usize, Rational)>)>,
    echelon: Vec<Row>,
}

impl Reduction {
    /// Rows of the echelon form, aligned with `pivots`.
    pub fn echelon(&self) -> &[Row] {
        &self.echelon
    }
}

/// Gaussian elimination on equation rows (the `a` part carries the
/// variables, `b` is the constant).
pub fn gaussian_reduce(rows: &[Row]) -> Reduction {
    let mut out = Reduction::default();
    // Each echelon row is a combination of independent input rows; the
    // combination is stored densely over positions in `out.independent`.
    let mut combos: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        let mut comb = vec![Rational::zero(); out.independent.len()];
        for (k, (u, &(_, col))) in out.echelon.iter().zip(&out.pivots).enumerate() {
            if v.a[col].is_zero() {
                continue;
            }
            let f = &v.a[col] / &u.a[col];
            v.add_scaled(u, &-&f);
            for (c, uc) in comb.iter_mut().zip(&combos[k]) {
                if !uc.is_zero() {
                    *c -= &f * uc;
                }
            }
        }
        match v.a.iter().position(|c| !c.is_zero()) {
            Some(col) => {
                let pos = out.independent.len();
                out.independent.push(i);
                out.pivots.push((i, col));
                out.echelon.push(v);
                for c in combos.iter_mut() {
                    c.push(Rational::zero());
                }
                comb.push(Rational::from_integer(1.into()));
                debug_assert_eq!(comb.len(), pos + 1);
                combos.push(comb);
            }
            None => {
                out.dependent.push(i);
                // v = row_i + Σ comb_k · row_{independent[k]}
                let terms: Vec<(usize, Rational)> = comb
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (out.independent[k], c.clone()))
                    .collect();
                if v.b.is_zero() {
                    out.combinations
                        .insert(i, terms.into_iter().map(|(j, c)| (j, -c)).collect());
                } else if out.inconsistent.is_none() {
                    // Scale so the constant becomes -1.
                    let s = -(Rational::from_integer(1.into()) / &v.b);
                    let mut mult = vec![(i, s.clone())];
                    mult.extend(terms.into_iter().map(|(j, c)| (j, c * &s)));
                    mult.sort_by_key(|&(j, _)| j);
                    out.inconsistent = Some((i, mult));
                }
            }
        }
    }
    out
}

/// Elimination of variables by a set of independent equations.
///
/// After construction every eliminated variable `x_c` is an affine function
/// of the remaining (free) variables, and inequality rows can be rewritten
/// over the free variables only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    dim: usize,
    free: Vec<usize>,
    /// `(column, expression)` with `x_column = expression.b + expression.a · x_free`.
    eliminated: Vec<(usize, Row)>,
}

impl Substitution {
    pub fn identity(dim: usize) -> Self {
        Substitution {
            dim,
            free: (0..dim).collect(),
            eliminated: Vec::new(),
        }
    }

    /// Builds the substitution from the independent rows of a
    /// [`Reduction`] over `dim` variables.
    pub fn from_reduction(red: &Reduction, dim: usize) -> Self {
        let mut rows: Vec<Row> = red.echelon.to_vec();
        let cols: Vec<usize> = red.pivots.iter().map(|&(_, c)| c).collect();
        // Back-substitute to reduced row echelon form.
        for (k, &c) in cols.iter().enumerate() {
            let (head, tail) = rows.split_at_mut(k);
            let (pivot_row, tail) = tail.split_first_mut().expect("one row per pivot");
            for other in head.iter_mut().chain(tail.iter_mut()) {
                if !other.a[c].is_zero() {
                    let f = &other.a[c] / &pivot_row.a[c];
                    other.add_scaled(pivot_row, &-f);
                }
            }
        }
        let mut is_pivot = vec![false; dim];
        for &c in &cols {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..dim).filter(|&j| !is_pivot[j]).collect();
        let mut eliminated: Vec<(usize, Row)> = rows
            .iter()
            .zip(&cols)
            .map(|(r, &c)| {
                let s = -(Rational::from_integer(1.into()) / &r.a[c]);
                let expr = Row {
                    b: &r.b * &s,
                    a: free.iter().map(|&f| &r.a[f] * &s).collect(),
                };
                (c, expr)
            })
            .collect();
        eliminated.sort_by_key(|&(c, _)| c);
        Substitution {
            dim,
            free,
            eliminated,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn reduced_dim(&self) -> usize {
        self.free.len()
    }

    /// Original column indices of the remaining variables.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    /// `(column, expression)` pairs of the eliminated variables.
    pub fn eliminated(&self) -> &[(usize, Row)] {
        &self.eliminated
    }

    /// Rewrites a row over the original variables as a row over the free
    /// variables with the same value at every point satisfying the equations.
    pub fn reduce_row(&self, row: &Row) -> Row {
        let mut out = Row {
            b: row.b.clone(),
            a: self.free.iter().map(|&f| row.a[f].clone()).collect(),
        };
        for (c, expr) in &self.eliminated {
            let coef = &row.a[*c];
            if !coef.is_zero() {
                out.add_scaled(expr, coef);
            }
        }
        out
    }

    pub fn lift_point(&self, y: &[Rational]) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.dim];
        for (&f, v) in self.free.iter().zip(y) {
            x[f] = v.clone();
        }
        for (c, expr) in &self.eliminated {
            x[*c] = expr.eval(y);
        }
        x
    }

    pub fn lift_direction(&self, dy: &[Rational]) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.dim];
        for (&f, v) in self.free.iter().zip(dy) {
            x[f] = v.clone();
        }
        for (c, expr) in &self.eliminated {
            x[*c] = expr.eval_direction(dy);
        }
        x
    }

    /// Coordinates of `x` on the free variables.
    pub fn project_point(&self, x: &[Rational]) -> Vec<Rational> {
        self.free.iter().map(|&f| x[f].clone()).collect()
    }
}

/// Inverse of a square matrix, `None` when singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = vec![Rational::zero(); n];
            r[i] = Rational::from_integer(1.into());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let piv = a[col][col].clone();
        if !piv.is_zero() {
            for v in a[col].iter_mut() {
                *v /= &piv;
            }
            for v in inv[col].iter_mut() {
                *v /= &piv;
            }
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..n {
                if !a[col][k].is_zero() {
                    let t = &f * &a[col][k];
                    a[r][k] -= t;
                }
                if !inv[col][k].is_zero() {
                    let t = &f * &inv[col][k];
                    inv[r][k] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Solves `m x = rhs` for square nonsingular `m`.
pub fn solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let inv = invert(m)?;
    Some(inv.iter().map(|r| crate::rational::dot(r, rhs)).collect())
}

/// Incremental row-echelon basis used for rank and independence checks.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (col, u) in &self.rows {
            if v[*col].is_zero() {
                continue;
            }
            let f = &v[*col] / &u[*col];
            for (x, y) in v.iter_mut().zip(u) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn is_independent(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().any(|x| !x.is_zero())
    }

    /// Adds `v` if it is independent of the rows so far; reports whether it was.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(col) => {
                self.rows.push((col, r));
                true
            }
            None => false,
        }
    }
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of `{ x : r·x = 0 for every row r }` in `n` variables.
pub fn null_space(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    // Reduced row echelon form.
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][col].clone();
        for v in a[r].iter_mut() {
            *v /= &piv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in dst.iter_mut().zip(src) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::from_integer(1.into());
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[k][free].clone();
        }
        basis.push(v);
    }
    basis
}
