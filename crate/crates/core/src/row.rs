//! Rows and polyhedra.
//!
//! An H-row `(b, a)` stands for `b + a·x ≥ 0`, or `b + a·x = 0` when its
//! index is in the linearity set. A V-row `(δ, v)` is a vertex when `δ = 1`
//! and a ray when `δ = 0`; V-rows in the linearity set are lineality
//! directions.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::rational::{dot, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row {
    /// Constant term.
    pub b: Rational,
    /// Coefficients of `x₁ … x_d`.
    pub a: Vec<Rational>,
}

impl Row {
    pub fn new(b: Rational, a: Vec<Rational>) -> Self {
        Row { b, a }
    }

    pub fn from_ints(b: i64, a: &[i64]) -> Self {
        Row {
            b: int(b),
            a: a.iter().copied().map(int).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Row {
            b: Rational::zero(),
            a: alloc::vec![Rational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// `b` followed by `a₁ … a_d`.
    pub fn entries(&self) -> impl Iterator<Item = &Rational> + Clone {
        core::iter::once(&self.b).chain(self.a.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.b.is_zero() && self.coefficients_zero()
    }

    pub fn coefficients_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    /// `b + a·x`.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        &self.b + dot(&self.a, x)
    }

    /// `a·d`, the rate of change along a direction.
    pub fn eval_direction(&self, d: &[Rational]) -> Rational {
        dot(&self.a, d)
    }

    pub fn scaled(&self, q: &Rational) -> Row {
        Row {
            b: &self.b * q,
            a: self.a.iter().map(|v| v * q).collect(),
        }
    }

    pub fn negated(&self) -> Row {
        Row {
            b: -&self.b,
            a: self.a.iter().map(|v| -v).collect(),
        }
    }

    /// `self += q · other`.
    pub fn add_scaled(&mut self, other: &Row, q: &Rational) {
        if q.is_zero() {
            return;
        }
        if !other.b.is_zero() {
            self.b += &other.b * q;
        }
        for (u, v) in self.a.iter_mut().zip(&other.a) {
            if !v.is_zero() {
                *u += v * q;
            }
        }
    }

    /// Drops coefficient `col`.
    pub fn without_column(&self, col: usize) -> Row {
        let mut a = self.a.clone();
        a.remove(col);
        Row {
            b: self.b.clone(),
            a,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Inequalities and equations.
    H,
    /// Vertices, rays and lineality directions.
    V,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    kind: Kind,
    dim: usize,
    rows: Vec<Row>,
    linearity: BTreeSet<usize>,
}

impl Polyhedron {
    pub fn new(
        kind: Kind,
        dim: usize,
        rows: Vec<Row>,
        linearity: BTreeSet<usize>,
    ) -> Result<Self, Error> {
        for (i, r) in rows.iter().enumerate() {
            if r.dim() != dim {
                return Err(Error::RowLength {
                    row: i,
                    expected: dim,
                    found: r.dim(),
                });
            }
            if kind == Kind::V && !(r.b.is_zero() || r.b.is_one()) {
                return Err(Error::GeneratorLead { row: i });
            }
        }
        if let Some(&index) = linearity.iter().find(|&&i| i >= rows.len()) {
            return Err(Error::LinearityIndex {
                index,
                rows: rows.len(),
            });
        }
        Ok(Polyhedron {
            kind,
            dim,
            rows,
            linearity,
        })
    }

    /// Inequality system `b_i + A_i x ≥ 0` without equations.
    pub fn inequalities(dim: usize, rows: Vec<Row>) -> Result<Self, Error> {
        Self::new(Kind::H, dim, rows, BTreeSet::new())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Row {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn linearity(&self) -> &BTreeSet<usize> {
        &self.linearity
    }

    pub fn is_linearity(&self, i: usize) -> bool {
        self.linearity.contains(&i)
    }

    /// Indices of the inequality rows, ascending.
    pub fn inequality_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows.len()).filter(move |i| !self.linearity.contains(i))
    }

    pub fn into_parts(self) -> (Kind, usize, Vec<Row>, BTreeSet<usize>) {
        (self.kind, self.dim, self.rows, self.linearity)
    }

    /// Membership test for H-representations by direct substitution.
    pub fn contains(&self, x: &[Rational]) -> bool {
        debug_assert_eq!(self.kind, Kind::H);
        self.rows.iter().enumerate().all(|(i, r)| {
            let v = r.eval(x);
            if self.linearity.contains(&i) {
                v.is_zero()
            } else {
                v >= Rational::zero()
            }
        })
    }
}
