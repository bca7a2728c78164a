#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use redund_core::rational::Rational;
use redund_core::{Kind, Polyhedron, Row};

pub type IntRow = (i64, Vec<i64>);

pub fn poly(d: usize, rows: &[IntRow]) -> Polyhedron {
    Polyhedron::inequalities(d, rows.iter().map(|(b, a)| Row::from_ints(*b, a)).collect()).unwrap()
}

pub fn poly_lin(d: usize, rows: &[IntRow], lin: &[usize]) -> Polyhedron {
    Polyhedron::new(
        Kind::H,
        d,
        rows.iter().map(|(b, a)| Row::from_ints(*b, a)).collect(),
        lin.iter().copied().collect(),
    )
    .unwrap()
}

pub fn cube_rows(d: usize, lo: i64, hi: i64) -> Vec<IntRow> {
    let mut rows = Vec::new();
    for j in 0..d {
        let mut a = vec![0; d];
        a[j] = 1;
        rows.push((-lo, a.clone()));
        a[j] = -1;
        rows.push((hi, a));
    }
    rows
}

/// Rows with small integer coefficients and a bias towards feasibility.
pub fn arb_rows(d: usize, max_rows: usize) -> impl Strategy<Value = Vec<IntRow>> {
    prop::collection::vec(
        (-2i64..=9, prop::collection::vec(-9i64..=9, d)),
        1..=max_rows,
    )
}

/// A system plus injected negated rows and scaled copies, in a shuffled
/// order.
pub fn arb_system(max_dim: usize, max_rows: usize) -> impl Strategy<Value = (usize, Vec<IntRow>)> {
    (1..=max_dim)
        .prop_flat_map(move |d| {
            (
                Just(d),
                arb_rows(d, max_rows),
                prop::collection::vec((any::<prop::sample::Index>(), 0u8..3, 1i64..=3), 0..=3),
            )
        })
        .prop_map(move |(d, mut rows, extra)| {
            for (idx, kind, scale) in extra {
                if rows.len() >= max_rows {
                    break;
                }
                let (b, a) = rows[idx.index(rows.len())].clone();
                let row = match kind {
                    0 => (-b, a.iter().map(|v| -v).collect()),
                    _ => (b * scale, a.iter().map(|v| v * scale).collect()),
                };
                rows.push(row);
            }
            (d, rows)
        })
}

pub fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Grid points of a few fractions in every coordinate, plus `extra`.
pub fn sample_points(d: usize, extra: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let axis = [
        r(-3, 1),
        r(-1, 1),
        r(-1, 2),
        r(0, 1),
        r(1, 3),
        r(1, 1),
        r(2, 1),
        r(7, 2),
    ];
    let mut pts: Vec<Vec<Rational>> = extra.to_vec();
    let mut idx = vec![0usize; d];
    loop {
        pts.push(idx.iter().map(|&k| axis[k].clone()).collect());
        let mut j = 0;
        loop {
            if j == d {
                return pts;
            }
            idx[j] += 1;
            if idx[j] < axis.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Fixed seed, so every run checks the same cases.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
