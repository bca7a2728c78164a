//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! ```text
//! cargo test --release -p redund --test acceptance            # all
//! cargo test --release -p redund --test acceptance -- 1 5 7   # some
//! ```

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use redund::format::emit_report;
use redund::pool::available_cores;
use redund::{parse, ThreadPool};
use redund_core::fm::{project, ProjectOptions, ProjectionSpec};
use redund_core::lp::{solve, LpOutcome, LpProblem};
use redund_core::minrep::minimum_representation_with;
use redund_core::oracle::{golden_square, naive_classify, same_rows};
use redund_core::{
    classify, minimum_representation, Error, Kind, Method, MinRepOptions, Polyhedron, Rational,
    Row, Sequential, Verdict,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let picked: BTreeSet<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let all: [(usize, &str, Duration, Check); 8] = [
        (1, "worked example", secs(1), worked_example),
        (2, "classify vs brute force", secs(300), oracle_equivalence),
        (3, "classic vs Clarkson", secs(600), classic_vs_clarkson),
        (4, "parallel determinism", secs(600), parallel_determinism),
        (5, "Fourier-Motzkin membership", secs(600), fm_correctness),
        (6, "d-cube projections", secs(10), cube_regression),
        (7, "golden square", secs(300), golden),
        (8, "scaled-down trend", Duration::MAX, trend),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in all {
        if !picked.is_empty() && !picked.contains(&id) {
            continue;
        }
        let t0 = Instant::now();
        let v = check();
        let took = t0.elapsed();
        let in_time = took <= limit;
        let pass = v.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = if limit == Duration::MAX {
            String::new()
        } else {
            format!(" limit {:.0?}", limit)
        };
        println!(
            "{} {id} {name}: {}{} ({:.2?}{budget})",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            if in_time { "" } else { "; over time limit" },
            took,
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn h(dim: usize, rows: Vec<Row>, lin: &[usize]) -> Polyhedron {
    Polyhedron::new(Kind::H, dim, rows, lin.iter().copied().collect()).unwrap()
}

fn random_row(rng: &mut ChaCha8Rng, d: usize, b: (i64, i64), a: i64) -> Row {
    let b = rng.gen_range(b.0..=b.1);
    let coeffs: Vec<i64> = (0..d).map(|_| rng.gen_range(-a..=a)).collect();
    Row::from_ints(b, &coeffs)
}

fn worked_example() -> Outcome {
    let p = h(
        2,
        vec![
            Row::from_ints(3, &[1, -2]),
            Row::from_ints(0, &[1, 0]),
            Row::from_ints(-6, &[-1, 4]),
        ],
        &[0],
    );
    let rep = minimum_representation(&p, &Sequential).unwrap();
    // Each row judged on its own against all the others, with the equation
    // written as two inequalities, and by the brute-force oracle.
    let split = Polyhedron::inequalities(
        2,
        vec![
            p.row(0).clone(),
            p.row(0).negated(),
            p.row(1).clone(),
            p.row(2).clone(),
        ],
    )
    .unwrap();
    let naive: Vec<Verdict> = [2, 3]
        .iter()
        .map(|&i| classify(&split, i, false).unwrap().verdict)
        .chain(
            [1, 2]
                .iter()
                .map(|&i| naive_classify(&p, i).unwrap().verdict),
        )
        .collect();
    let both_weak = naive.iter().all(|&v| v == Verdict::WeaklyRedundant);
    let pass = rep.final_linearity.len() == 1 && rep.final_nonredundant.len() == 1 && both_weak;
    ok(
        pass,
        format!(
            "{} linearity, {} inequality kept; per-row verdicts {:?}",
            rep.final_linearity.len(),
            rep.final_nonredundant.len(),
            naive
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut instances, mut rows_checked, mut skipped) = (0, 0, 0);
    let mut mismatches = Vec::new();
    while instances < 500 {
        let d = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=12);
        let mut rows: Vec<Row> = (0..m)
            .map(|_| random_row(&mut rng, d, (-9, 9), 9))
            .collect();
        // Exact and opposite copies give duplicates and hidden equations.
        if m >= 2 && rng.gen_bool(0.3) {
            let k = rng.gen_range(0..m);
            let r = if rng.gen_bool(0.5) {
                rows[k].negated()
            } else {
                rows[k].clone()
            };
            let at = rng.gen_range(0..m);
            rows[at] = r;
        }
        let p = Polyhedron::inequalities(d, rows).unwrap();
        if !minimum_representation(&p, &Sequential).unwrap().feasible {
            skipped += 1;
            continue;
        }
        instances += 1;
        for i in 0..m {
            rows_checked += 1;
            let a = classify(&p, i, true).map(|c| c.verdict);
            let b = naive_classify(&p, i).map(|c| c.verdict);
            if a != b {
                mismatches.push(format!("{p:?} row {i}: {a:?} vs {b:?}"));
            }
        }
    }
    if let Some(m) = mismatches.first() {
        eprintln!("first mismatch: {m}");
    }
    ok(
        mismatches.is_empty(),
        format!(
            "{instances} feasible instances, {rows_checked} rows, {} mismatches ({skipped} infeasible draws skipped)",
            mismatches.len()
        ),
    )
}

/// Full-dimensional system around the origin with `m` rows, about
/// `fraction` of them redundant by construction, no two rows parallel.
fn redundant_system(rng: &mut ChaCha8Rng, d: usize, m: usize, fraction: f64) -> Polyhedron {
    let n_red = ((m as f64) * fraction).round() as usize;
    let n_base = (m - n_red).max(1);
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    let mut push = |r: Row, rows: &mut Vec<Row>| {
        let key = redund_core::linalg::gcd_normalize(&Row::new(int(0), r.a.clone()));
        if r.a.iter().all(|v| *v == int(0)) || !seen.insert(key) {
            return false;
        }
        rows.push(r);
        true
    };
    while rows.len() < n_base {
        let r = random_row(rng, d, (1, 20), 9);
        push(r, &mut rows);
    }
    let base = rows.clone();
    let mut tries = 0;
    while rows.len() < m && tries < 50 * m {
        tries += 1;
        let k = rng.gen_range(1..=3.min(base.len()));
        let mut r = Row::zero(d);
        for _ in 0..k {
            let j = rng.gen_range(0..base.len());
            r.add_scaled(&base[j], &int(rng.gen_range(1..=3)));
        }
        r.b += int(rng.gen_range(0..=3));
        push(r, &mut rows);
    }
    // Interleave base and derived rows.
    for i in (1..rows.len()).rev() {
        let j = rng.gen_range(0..=i);
        rows.swap(i, j);
    }
    Polyhedron::inequalities(d, rows).unwrap()
}

fn classic_vs_clarkson() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bad = Vec::new();
    let mut largest_lp = (0, 0);
    let n = 200;
    for k in 0..n {
        let fraction = 0.95 * (k % 20) as f64 / 19.0;
        let d = rng.gen_range(2..=6);
        let m = rng.gen_range(d + 1..=60);
        let p = redundant_system(&mut rng, d, m, fraction);
        let classic = minimum_representation(&p, &Sequential).unwrap();
        let opts = MinRepOptions {
            method: Method::Clarkson,
            ..MinRepOptions::default()
        };
        let clark = minimum_representation_with(&p, &opts, &Sequential).unwrap();
        let lp = clark.stats.max_clarkson_lp_rows;
        if lp > largest_lp.0 {
            largest_lp = (lp, clark.final_nonredundant.len());
        }
        if !classic.stats.full_dimensional
            || classic.final_nonredundant != clark.final_nonredundant
            || lp > clark.final_nonredundant.len()
        {
            bad.push(k);
        }
    }
    ok(
        bad.is_empty(),
        format!(
            "{n} instances, {} disagreements; largest Clarkson LP {} rows with {} rows kept",
            bad.len(),
            largest_lp.0,
            largest_lp.1
        ),
    )
}

fn corpus() -> Vec<(String, Polyhedron)> {
    let mut out: Vec<(String, Polyhedron)> = common::corpus()
        .into_iter()
        .map(|path| {
            let f = parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
            (
                path.file_name().unwrap().to_string_lossy().into_owned(),
                f.polyhedron,
            )
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..12 {
        let d = rng.gen_range(2..=5);
        let p = redundant_system(&mut rng, d, 40, 0.1 + 0.07 * k as f64);
        out.push((format!("generated-{k}"), p));
    }
    out
}

fn parallel_determinism() -> Outcome {
    let corpus = corpus();
    let mut differ = Vec::new();
    for (name, p) in &corpus {
        for method in [Method::Classic, Method::Clarkson] {
            let opts = MinRepOptions {
                method,
                ..MinRepOptions::default()
            };
            let run = |w: usize| {
                let r = minimum_representation_with(p, &opts, &ThreadPool::new(w));
                let text = r.as_ref().ok().map(|r| emit_report(None, p, r));
                (r, text)
            };
            let base = run(1);
            for w in [2, 8] {
                if run(w) != base {
                    differ.push(format!("{name} {method:?} width {w}"));
                }
            }
        }
    }
    ok(
        differ.is_empty(),
        format!(
            "{} inputs x 2 methods, widths 1/2/8; differing: {:?}",
            corpus.len(),
            differ
        ),
    )
}

/// Whether `{x : (y, x) ∈ P}` is non-empty, by one LP over the
/// eliminated coordinates.
fn lifts(p: &Polyhedron, spec: &ProjectionSpec, y: &[Rational]) -> bool {
    let elim: Vec<usize> = (0..p.dim()).filter(|c| !spec.keep().contains(c)).collect();
    let mut rows = Vec::new();
    for (i, r) in p.rows().iter().enumerate() {
        let mut b = r.b.clone();
        for (k, &c) in spec.keep().iter().enumerate() {
            b += &r.a[c] * &y[k];
        }
        let row = Row::new(b, elim.iter().map(|&c| r.a[c].clone()).collect());
        if p.is_linearity(i) {
            rows.push(row.negated());
        }
        rows.push(row);
    }
    let lp = LpProblem::minimize(Row::zero(elim.len()), rows.iter().collect(), elim.len());
    !matches!(solve(&lp), LpOutcome::Infeasible { .. })
}

fn fm_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut wrong_members, mut wrong_counts, mut prop2, mut inside, mut total) = (0, 0, 0, 0, 0);
    let n = 100;
    for _ in 0..n {
        let d = rng.gen_range(2..=4);
        let m = rng.gen_range(2..=10);
        let mut rows: Vec<Row> = (0..m).map(|_| random_row(&mut rng, d, (0, 9), 5)).collect();
        let mut lin = Vec::new();
        if rng.gen_bool(0.25) {
            rows.push(random_row(&mut rng, d, (0, 0), 3));
            lin.push(m);
        }
        let p = h(d, rows, &lin);
        let k = rng.gen_range(1..d);
        let mut cols: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            cols.swap(i, rng.gen_range(0..=i));
        }
        let spec = ProjectionSpec::eliminating(d, cols[..k].to_vec()).unwrap();
        let opts = ProjectOptions {
            check_full_dimension: true,
            ..ProjectOptions::default()
        };
        let proj = match project(&p, &spec, &opts, &Sequential) {
            Ok(x) => x,
            Err(Error::Internal("hidden linearity after elimination")) => {
                prop2 += 1;
                continue;
            }
            Err(Error::Internal("elimination row count")) => {
                wrong_counts += 1;
                continue;
            }
            Err(e) => panic!("projection failed: {e}"),
        };
        let mut equations = proj.initial.as_ref().map_or(0, |r| r.final_linearity.len());
        for r in &proj.rounds {
            if !r.by_equation && r.raw_rows != equations + r.z + r.r * r.sneg {
                wrong_counts += 1;
            }
            equations = r.kept_equations;
        }
        let q = &proj.polyhedron;
        for _ in 0..500 {
            let y: Vec<Rational> = (0..q.dim())
                .map(|_| Rational::new(rng.gen_range(-16..=16).into(), 4.into()))
                .collect();
            let a = q.contains(&y);
            total += 1;
            inside += a as usize;
            if a != lifts(&p, &spec, &y) {
                wrong_members += 1;
            }
        }
    }
    ok(
        wrong_members == 0 && wrong_counts == 0 && prop2 == 0,
        format!(
            "{n} projections, {total} samples ({inside} inside), {wrong_members} membership errors, {wrong_counts} count mismatches, {prop2} hidden-linearity assertions"
        ),
    )
}

fn cube(d: usize) -> Polyhedron {
    let mut rows = Vec::new();
    for j in 0..d {
        let mut a = vec![0; d];
        a[j] = 1;
        rows.push(Row::from_ints(0, &a));
        a[j] = -1;
        rows.push(Row::from_ints(1, &a));
    }
    h(d, rows, &[])
}

fn cube_regression() -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for d in 1..=6 {
        let c = cube(d);
        for mask in 1u32..(1 << d) {
            let elim: Vec<usize> = (0..d).filter(|j| mask & (1 << j) != 0).collect();
            let k = elim.len();
            let spec = ProjectionSpec::eliminating(d, elim).unwrap();
            let q = project(&c, &spec, &ProjectOptions::default(), &Sequential)
                .unwrap()
                .polyhedron;
            cases += 1;
            if q.len() != 2 * (d - k) || !same_rows(&q, &cube(d - k)) {
                bad.push((d, mask));
            }
        }
    }
    ok(
        bad.is_empty(),
        format!("{cases} eliminations from cubes of dimension 1..6, wrong: {bad:?}"),
    )
}

fn golden() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    let n = 100;
    for _ in 0..n {
        let d = rng.gen_range(2..=4);
        let mut rows = cube_box(d);
        for _ in 0..rng.gen_range(1..=5) {
            rows.push(random_row(&mut rng, d, (1, 9), 5));
        }
        let mut lin = Vec::new();
        if rng.gen_bool(0.25) {
            lin.push(rows.len());
            rows.push(random_row(&mut rng, d, (0, 0), 3));
        }
        let p = h(d, rows, &lin);
        let k = rng.gen_range(1..d);
        let keep: Vec<usize> = {
            let mut cols: Vec<usize> = (0..d).collect();
            for i in (1..d).rev() {
                cols.swap(i, rng.gen_range(0..=i));
            }
            cols[k..].to_vec()
        };
        let spec = ProjectionSpec::keeping(d, keep).unwrap();
        let fel = project(&p, &spec, &ProjectOptions::default(), &Sequential).unwrap();
        let gs = golden_square(&p, &spec, &Sequential).unwrap();
        if !same_rows(&fel.polyhedron, &gs) {
            if bad == 0 {
                eprintln!("first mismatch: {p:?} keeping {:?}", spec.keep());
            }
            bad += 1;
        }
    }
    ok(
        bad == 0,
        format!("{n} projections of dimension <= 4, {bad} differ"),
    )
}

/// `-2 ≤ xⱼ ≤ 2`.
fn cube_box(d: usize) -> Vec<Row> {
    let mut rows = Vec::new();
    for j in 0..d {
        for s in [1, -1] {
            let mut a = vec![0; d];
            a[j] = s;
            rows.push(Row::from_ints(2, &a));
        }
    }
    rows
}

/// Rational point on the unit sphere in `R^(k+1)` from `k` parameters by
/// inverse stereographic projection.
fn sphere_point(t: &[Rational]) -> Vec<Rational> {
    let one = int(1);
    let n2: Rational = t.iter().map(|v| v * v).sum();
    let den = &one + &n2;
    let mut p: Vec<Rational> = t.iter().map(|v| int(2) * v / &den).collect();
    p.push((n2 - one) / den);
    p
}

fn random_param(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-60..=60).into(), rng.gen_range(1..=20).into())
}

fn sphere_input(rng: &mut ChaCha8Rng, n: usize) -> Polyhedron {
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    while rows.len() < n {
        let x = sphere_point(&[random_param(rng), random_param(rng)]);
        if seen.insert(x.clone()) {
            rows.push(Row::new(int(1), x));
        }
    }
    // The centre is the one redundant point.
    let at = rng.gen_range(0..=n);
    rows.insert(at, Row::new(int(1), vec![int(0); 3]));
    Polyhedron::new(Kind::V, 3, rows, BTreeSet::new()).unwrap()
}

/// Tangent halfspaces `1 - c·x ≥ 0` at rational points `c` of the unit
/// sphere, padded with strictly redundant combinations of them.
fn ducube_like(rng: &mut ChaCha8Rng, d: usize, facets: usize, m: usize) -> Polyhedron {
    let mut seen = BTreeSet::new();
    let mut base = Vec::new();
    while base.len() < facets {
        let t: Vec<Rational> = (0..d - 1).map(|_| random_param(rng)).collect();
        let c = sphere_point(&t);
        if seen.insert(c.clone()) {
            base.push(Row::new(int(1), c.iter().map(|v| -v).collect()));
        }
    }
    let mut rows = base.clone();
    while rows.len() < m {
        let mut r = Row::zero(d);
        for _ in 0..rng.gen_range(2..=3) {
            let j = rng.gen_range(0..base.len());
            r.add_scaled(&base[j], &int(rng.gen_range(1..=4)));
        }
        r.b += Rational::new(rng.gen_range(1..=5).into(), 2.into());
        rows.push(r);
    }
    for i in (1..rows.len()).rev() {
        rows.swap(i, rng.gen_range(0..=i));
    }
    Polyhedron::inequalities(d, rows).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t0 = Instant::now();
    let v = f();
    (v, t0.elapsed())
}

fn trend() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let sphere = sphere_input(&mut rng, 2000);
    let classic = MinRepOptions {
        check_full_dimension: false,
        ..MinRepOptions::default()
    };
    let (one, t1) =
        timed(|| minimum_representation_with(&sphere, &classic, &ThreadPool::new(1)).unwrap());
    let (eight, t8) =
        timed(|| minimum_representation_with(&sphere, &classic, &ThreadPool::new(8)).unwrap());
    let speedup = t1.as_secs_f64() / t8.as_secs_f64();
    let sphere_ok = one == eight && one.final_nonredundant.len() == 2000;

    let cube = ducube_like(&mut rng, 5, 20, 400);
    let clarkson = MinRepOptions {
        method: Method::Clarkson,
        ..classic
    };
    let (a, tc) =
        timed(|| minimum_representation_with(&cube, &classic, &ThreadPool::new(1)).unwrap());
    let (b, tk) =
        timed(|| minimum_representation_with(&cube, &clarkson, &ThreadPool::new(1)).unwrap());
    let cube_ok = a.final_nonredundant == b.final_nonredundant && a.final_nonredundant.len() == 20;

    let pass = sphere_ok && cube_ok && speedup >= 2.0 && tk < tc;
    ok(
        pass,
        format!(
            "[{}] sphere 2001 points: 1 worker {:.1?}, 8 workers {:.1?}, speedup {:.2} (need 2.00, {} cores available); \
             [{}] 400-row 95% redundant: classic {:.1?}, Clarkson {:.1?}",
            if sphere_ok && speedup >= 2.0 { "ok" } else { "fail" },
            t1,
            t8,
            speedup,
            available_cores(),
            if cube_ok && tk < tc { "ok" } else { "fail" },
            tc,
            tk
        ),
    )
}
