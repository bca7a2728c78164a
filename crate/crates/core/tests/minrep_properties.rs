mod common;

use common::*;
use proptest::prelude::*;
use redund_core::minrep::{
    minimum_representation_with, reduced_polyhedron, verify_report, Disposition, Method,
    MinRepOptions,
};
use redund_core::oracle::naive_classify;
use redund_core::{minimum_representation, Kind, Polyhedron, Row, Sequential, Verdict};

fn r0() -> redund_core::Rational {
    r(0, 1)
}

fn same_set(p: &Polyhedron, q: &Polyhedron, extra: &[Vec<redund_core::Rational>]) -> bool {
    sample_points(p.dim(), extra)
        .iter()
        .all(|x| p.contains(x) == q.contains(x))
}

fn witnesses(rep: &redund_core::MinRepReport) -> Vec<Vec<redund_core::Rational>> {
    rep.classes
        .values()
        .filter_map(|c| c.witness.as_ref().map(|w| w.point().to_vec()))
        .collect()
}

fn with_equations() -> impl Strategy<Value = Polyhedron> {
    (
        arb_system(3, 9),
        prop::collection::vec(any::<prop::sample::Index>(), 0..=2),
    )
        .prop_map(|((d, rows), lin)| {
            let lin: Vec<usize> = lin.iter().map(|k| k.index(rows.len())).collect();
            poly_lin(d, &rows, &lin)
        })
}

proptest! {
    #![proptest_config(config(150))]

    #[test]
    fn report_checks_and_preserves_the_set(p in with_equations()) {
        let rep = minimum_representation(&p, &Sequential).unwrap();
        prop_assert_eq!(verify_report(&p, &rep), Ok(()));
        if !rep.feasible {
            return Ok(());
        }
        let q = reduced_polyhedron(&p, &rep);
        prop_assert!(same_set(&p, &q, &witnesses(&rep)));
        for i in 0..p.len() {
            prop_assert!(rep.disposition(i) != Disposition::Undecided);
        }
    }

    #[test]
    fn output_is_minimal_by_oracle(p in with_equations()) {
        let rep = minimum_representation(&p, &Sequential).unwrap();
        if !rep.feasible {
            return Ok(());
        }
        let q = reduced_polyhedron(&p, &rep);
        for i in q.inequality_indices() {
            let c = naive_classify(&q, i).unwrap();
            prop_assert_eq!(c.verdict, Verdict::NonRedundant, "row {} of {:?}", i, q);
        }
    }

    #[test]
    fn cones_match_oracle((d, rows) in arb_system(4, 10)) {
        let cone: Vec<IntRow> = rows.into_iter().map(|(_, a)| (0, a)).collect();
        let p = poly(d, &cone);
        let rep = minimum_representation(&p, &Sequential).unwrap();
        prop_assert_eq!(verify_report(&p, &rep), Ok(()));
        let q = reduced_polyhedron(&p, &rep);
        prop_assert!(same_set(&p, &q, &witnesses(&rep)));
        for i in q.inequality_indices() {
            prop_assert_eq!(naive_classify(&q, i).unwrap().verdict, Verdict::NonRedundant);
        }
        for (i, c) in &rep.classes {
            prop_assert!(c.verdict != Verdict::StronglyRedundant, "row {}", i);
        }
    }

    #[test]
    fn idempotent(p in with_equations()) {
        let rep = minimum_representation(&p, &Sequential).unwrap();
        if !rep.feasible {
            return Ok(());
        }
        let q = reduced_polyhedron(&p, &rep);
        let again = minimum_representation(&q, &Sequential).unwrap();
        prop_assert_eq!(again.final_linearity, q.linearity().clone());
        prop_assert_eq!(again.final_nonredundant, q.inequality_indices().collect());
    }

    #[test]
    fn scaled_copies_keep_one((d, rows) in arb_system(3, 8), scale in 1i64..=4) {
        let p = poly(d, &rows);
        let rep = minimum_representation(&p, &Sequential).unwrap();
        if !rep.feasible {
            return Ok(());
        }
        for &i in &rep.final_nonredundant {
            let mut more = rows.clone();
            let (b, a) = rows[i].clone();
            more.push((b * scale, a.iter().map(|v| v * scale).collect()));
            let q = poly(d, &more);
            let rep2 = minimum_representation(&q, &Sequential).unwrap();
            prop_assert_eq!(&rep2.final_nonredundant, &rep.final_nonredundant);
            prop_assert_eq!(rep2.duplicate_of.get(&rows.len()), Some(&i));
        }
    }

    #[test]
    fn row_order_does_not_matter(
        ((d, rows), perm) in arb_system(3, 9).prop_flat_map(|(d, rows)| {
            let n = rows.len();
            (Just((d, rows)), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let p = poly(d, &rows);
        let shuffled: Vec<IntRow> = perm.iter().map(|&k| rows[k].clone()).collect();
        let q = poly(d, &shuffled);
        let a = minimum_representation(&p, &Sequential).unwrap();
        let b = minimum_representation(&q, &Sequential).unwrap();
        prop_assert_eq!(a.feasible, b.feasible);
        if !a.feasible {
            return Ok(());
        }
        prop_assert_eq!(a.final_linearity.len(), b.final_linearity.len());
        prop_assert_eq!(a.final_nonredundant.len(), b.final_nonredundant.len());
        prop_assert!(same_set(&reduced_polyhedron(&p, &a), &reduced_polyhedron(&q, &b), &[]));
        if a.final_linearity.is_empty() {
            // Without equations every kept row is the smallest index of its
            // class, so the kept rows map to each other exactly.
            let mapped: std::collections::BTreeSet<usize> =
                b.final_nonredundant.iter().map(|&k| perm[k]).collect();
            let classes_a: std::collections::BTreeSet<Row> = a
                .final_nonredundant
                .iter()
                .map(|&i| redund_core::linalg::gcd_normalize(p.row(i)))
                .collect();
            let classes_b: std::collections::BTreeSet<Row> = mapped
                .iter()
                .map(|&i| redund_core::linalg::gcd_normalize(p.row(i)))
                .collect();
            prop_assert_eq!(classes_a, classes_b);
        }
    }

    #[test]
    fn clarkson_matches_classic(p in with_equations()) {
        let classic = minimum_representation(&p, &Sequential).unwrap();
        let opts = MinRepOptions { method: Method::Clarkson, ..MinRepOptions::default() };
        let clark = minimum_representation_with(&p, &opts, &Sequential).unwrap();
        prop_assert_eq!(verify_report(&p, &clark), Ok(()));
        prop_assert_eq!(&clark.final_nonredundant, &classic.final_nonredundant);
        prop_assert_eq!(&clark.final_linearity, &classic.final_linearity);
        prop_assert!(clark.stats.max_clarkson_lp_rows <= clark.final_nonredundant.len());
        for (i, c) in &classic.classes {
            prop_assert_eq!(clark.classes[i].verdict, c.verdict, "row {}", i);
        }
    }

    #[test]
    fn v_redundancy_matches_oracle(
        pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..=8),
        rays in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 0..=2),
    ) {
        let mut rows: Vec<Row> = pts.iter().map(|v| Row::from_ints(1, v)).collect();
        rows.extend(rays.iter().filter(|r| r.iter().any(|&v| v != 0)).map(|v| Row::from_ints(0, v)));
        let v = Polyhedron::new(Kind::V, 2, rows.clone(), Default::default()).unwrap();
        let rep = minimum_representation(&v, &Sequential).unwrap();
        prop_assert_eq!(verify_report(&v, &rep), Ok(()));
        // A generator is needed exactly when dropping it shrinks the hull:
        // compare facet descriptions with and without it.
        let hull = |keep: &[Row]| {
            let v = Polyhedron::new(Kind::V, 2, keep.to_vec(), Default::default()).unwrap();
            redund_core::oracle::facets_of_generators(&v).unwrap()
        };
        let full = hull(&rows);
        for &i in &rep.final_nonredundant {
            let fewer: Vec<Row> = (0..rows.len())
                .filter(|&k| k != i && rep.duplicate_of.get(&k) != Some(&i))
                .map(|k| rows[k].clone())
                .collect();
            if fewer.iter().all(|r| r.b == r0()) {
                continue;
            }
            prop_assert!(!redund_core::oracle::same_rows(&hull(&fewer), &full), "generator {}", i);
        }
        let kept: Vec<Row> = rep.final_nonredundant.iter().map(|&i| rows[i].clone()).collect();
        if rep.final_linearity.is_empty() {
            prop_assert!(redund_core::oracle::same_rows(&hull(&kept), &full));
        }
    }
}

#[test]
fn paper_example_smallest_index_survives() {
    let p = poly_lin(
        2,
        &[(3, vec![1, -2]), (0, vec![1, 0]), (-6, vec![-1, 4])],
        &[0],
    );
    let rep = minimum_representation(&p, &Sequential).unwrap();
    assert_eq!(rep.final_linearity, set(&[0]));
    assert_eq!(rep.final_nonredundant, set(&[1]));
    assert_eq!(rep.duplicate_of.get(&2), Some(&1));
}

#[test]
fn cubes_have_no_redundancy() {
    for d in 1..=4 {
        let p = poly(d, &cube_rows(d, 0, 1));
        let rep = minimum_representation(&p, &Sequential).unwrap();
        assert_eq!(rep.final_nonredundant.len(), 2 * d);
        assert!(rep.final_linearity.is_empty());
    }
}

#[test]
fn hidden_linearity_drops_dimension() {
    let p = poly(2, &[(0, vec![1, 0]), (0, vec![-1, 0]), (0, vec![0, 1])]);
    let rep = minimum_representation(&p, &Sequential).unwrap();
    assert_eq!(rep.final_linearity.len(), 1);
    assert_eq!(rep.final_nonredundant, set(&[2]));
    assert_eq!(rep.dimension, 1);
}

#[test]
fn midpoint_generator_is_redundant() {
    let v = Polyhedron::new(
        Kind::V,
        1,
        vec![
            Row::new(r(1, 1), vec![r(0, 1)]),
            Row::new(r(1, 1), vec![r(1, 1)]),
            Row::new(r(1, 1), vec![r(1, 2)]),
        ],
        Default::default(),
    )
    .unwrap();
    let rep = minimum_representation(&v, &Sequential).unwrap();
    assert_eq!(rep.final_nonredundant, set(&[0, 1]));
    assert!(rep.classes[&2].verdict.is_redundant());
}
