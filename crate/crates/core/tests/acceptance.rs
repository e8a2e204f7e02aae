//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
//! its elapsed time; the test fails if any criterion fails or overruns.
//!
//! Run with `cargo test -p qtorus --test acceptance -- --nocapture`.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use qtorus::goldman::{
    classical_range, intersection_number, quadruples, rerouted_range, verify_range,
};
use qtorus::holonomy::{fundamental_relation_check, path_holonomy, straight_commutation_holds};
use qtorus::lattice_paths::{intersections, signed_area_between, IntegerLoop};
use qtorus::rational::{int, rat};
use qtorus::sl2r_moduli::{classify, trace_triple, ConjTag};
use qtorus::triangular_rep::{
    identity_diagonal_obstruction, verify_internal_relation, verify_triangular_fundamental,
};
use qtorus::{Execution, LatticePolygon, Mat2, PLPath, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn counterexamples(found: &[[i64; 4]]) -> String {
    let shown: Vec<_> = found.iter().take(8).collect();
    format!("{} counterexamples, first {:?}", found.len(), shown)
}

fn quantum_identity() -> Outcome {
    let tally = verify_range(5, Execution::Parallel);
    if tally.checked != 14_641 {
        return Err(format!("checked {} quadruples", tally.checked));
    }
    if !tally.passed() {
        return Err(counterexamples(&tally.counterexamples));
    }
    Ok(format!("{} quadruples exact", tally.checked))
}

fn fundamental_relation() -> Outcome {
    if !fundamental_relation_check() {
        return Err("U1 U2 != q U2 U1".into());
    }
    // the exponent is exactly 1: neighbouring exponents must fail
    for k in [rat(1, 2), int(0), int(2)] {
        if straight_commutation_holds(1, 0, 0, 1, &k) {
            return Err(format!("relation also holds with exponent {k}"));
        }
    }
    let p1 = PLPath::from_integer_points(&[(0, 0), (1, 0), (1, 1)]).unwrap();
    let p2 = PLPath::from_integer_points(&[(0, 0), (0, 1), (1, 1)]).unwrap();
    let area = signed_area_between(&p1, &p2).map_err(|e| e.to_string())?;
    if area != int(1) {
        return Err(format!("staircase area {area}"));
    }
    Ok("exponent 1 = staircase area".into())
}

/// Twice the signed area of a closed integer ring, in plain integers.
fn doubled_shoelace(ring: &[(i64, i64)]) -> i64 {
    (0..ring.len())
        .map(|i| {
            let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum()
}

fn random_path(r: &mut ChaCha8Rng, start: (i64, i64), end: (i64, i64)) -> Vec<(i64, i64)> {
    let k = r.gen_range(0..=6);
    let mut pts = vec![start];
    for _ in 0..k {
        pts.push((r.gen_range(-10..=10), r.gen_range(-10..=10)));
    }
    pts.push(end);
    pts.dedup();
    if pts.len() == 1 {
        pts.push(pts[0]);
    }
    pts
}

fn area_phase() -> Outcome {
    let mut r = rng(3);
    let mut pairs = 0;
    while pairs < 1000 {
        let start = (r.gen_range(-10..=10), r.gen_range(-10..=10));
        let end = (r.gen_range(-10..=10), r.gen_range(-10..=10));
        if start == end {
            continue;
        }
        let v1 = random_path(&mut r, start, end);
        let v2 = random_path(&mut r, start, end);
        let p1 = PLPath::from_integer_points(&v1).map_err(|e| e.to_string())?;
        let p2 = PLPath::from_integer_points(&v2).map_err(|e| e.to_string())?;
        let mut ring = v1.clone();
        ring.extend(v2.iter().rev().skip(1).take(v2.len() - 2));
        let s = Rational::new(doubled_shoelace(&ring).into(), 2.into());
        let h1 = path_holonomy(&p1);
        let h2 = path_holonomy(&p2).with_phase_shift(&s);
        if h1 != h2 {
            return Err(format!("{v1:?} vs {v2:?}: {h1:?} != {h2:?}"));
        }
        pairs += 1;
    }
    Ok(format!("{pairs} homotopic pairs"))
}

fn pick_theorem() -> Outcome {
    let mut r = rng(4);
    let mut polygons = 0;
    while polygons < 1000 {
        let k = r.gen_range(3..=20);
        let pts: Vec<(i64, i64)> = (0..k)
            .map(|_| (r.gen_range(-20..=20), r.gen_range(-20..=20)))
            .collect();
        let Some(hull) = LatticePolygon::convex_hull(&pts) else {
            continue;
        };
        let doubled: Rational = int(doubled_shoelace(hull.vertices()).abs()) / int(2);
        if hull.pick_area() != hull.shoelace_area() || hull.shoelace_area() != doubled {
            return Err(format!("{:?}", hull.vertices()));
        }
        polygons += 1;
    }
    Ok(format!("{polygons} hulls"))
}

fn classical_limit() -> Outcome {
    let tally = classical_range(4, Execution::Parallel);
    if !tally.passed() {
        return Err(counterexamples(&tally.counterexamples));
    }
    Ok(format!("{} quadruples", tally.checked))
}

fn intersection_totals() -> Outcome {
    let mut pairs = 0;
    for [m, n, s, t] in quadruples(5) {
        let (l1, l2) = (IntegerLoop::new(m, n), IntegerLoop::new(s, t));
        let total: i64 = if l1.is_null() || l2.is_null() {
            0
        } else {
            intersections(l1, l2)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|d| d.index as i64)
                .sum()
        };
        if total != intersection_number(m, n, s, t) {
            return Err(format!("({m},{n},{s},{t}): sum {total}"));
        }
        pairs += 1;
    }
    Ok(format!("{pairs} pairs"))
}

fn rerouted_form() -> Outcome {
    let tally = rerouted_range(3, Execution::Parallel);
    if !tally.passed() {
        return Err(counterexamples(&tally.counterexamples));
    }
    Ok(format!("{} transversal quadruples", tally.checked))
}

/// `R(a)·diag(σ, 1/σ)·R(b)`, condition number `σ²`.
fn random_sl2(r: &mut ChaCha8Rng, max_cond: f64) -> Mat2 {
    let sigma = r.gen_range(1.0..max_cond.sqrt());
    Mat2::rotation(r.gen_range(0.0..TAU))
        .mul(&Mat2::diag(sigma, 1.0 / sigma))
        .mul(&Mat2::rotation(r.gen_range(0.0..TAU)))
}

fn cubic_identity() -> Outcome {
    let mut r = rng(8);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let (t1, t2): (f64, f64) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        let (a, b) = match i % 3 {
            0 => (Mat2::diag(t1.exp(), (-t1).exp()), Mat2::diag(t2.exp(), (-t2).exp())),
            1 => (Mat2::rotation(t1), Mat2::rotation(t2)),
            _ => (Mat2::new(1.0, t1, 0.0, 1.0), Mat2::new(1.0, t2, 0.0, 1.0)),
        };
        let sign = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let s = random_sl2(&mut r, 10.0);
        let u1 = s.mul(&a).mul(&s.inverse());
        let u2 = s.mul(&b.scale(sign)).mul(&s.inverse());
        let tt = trace_triple(&u1, &u2, 1e-8).map_err(|e| e.to_string())?;
        worst = worst.max(tt.cubic_residual.abs());
        if tt.cubic_residual.abs() > 1e-9 {
            return Err(format!("residual {:e} for {u1:?}, {u2:?}", tt.cubic_residual));
        }
    }
    Ok(format!("max residual {worst:.1e}"))
}

fn random_class_representative(r: &mut ChaCha8Rng, kind: usize) -> Mat2 {
    let sign = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
    match kind {
        0 => {
            let l = r.gen_range(1.2..5.0);
            Mat2::diag(sign * l, sign / l)
        }
        1 => {
            let t = r.gen_range(0.3..PI - 0.3);
            Mat2::rotation(if r.gen_bool(0.5) { t } else { t + PI })
        }
        2 => {
            let x = r.gen_range(2.0..4.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
            Mat2::new(sign, x, 0.0, sign)
        }
        _ => Mat2::identity().scale(sign),
    }
}

fn same_tag(a: &ConjTag, b: &ConjTag) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-6 * x.abs().max(1.0);
    match (a, b) {
        (ConjTag::Hyperbolic { lambda: x }, ConjTag::Hyperbolic { lambda: y }) => close(*x, *y),
        (ConjTag::Elliptic { theta: x }, ConjTag::Elliptic { theta: y }) => {
            qtorus::sl2r_moduli::angle_distance(*x, *y) <= 1e-6
        }
        _ => a == b,
    }
}

fn classification_stability() -> Outcome {
    let mut r = rng(9);
    let tol = 1e-6;
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let base = random_class_representative(&mut r, i % 4);
        let pre = random_sl2(&mut r, 10.0);
        let u = pre.mul(&base).mul(&pre.inverse());
        let s = random_sl2(&mut r, 1e3);
        if s.condition_number() > 1e3 * (1.0 + 1e-9) {
            return Err(format!("generated cond {}", s.condition_number()));
        }
        let v = u.conjugate_by(&s);
        let cu = classify(&u, tol).map_err(|e| format!("U = {u:?}: {e}"))?;
        let cv = classify(&v, tol).map_err(|e| format!("S⁻¹US = {v:?}: {e}"))?;
        if !same_tag(&cu.tag, &cv.tag) {
            return Err(format!("{:?} vs {:?}", cu.tag, cv.tag));
        }
        worst = worst.max(cu.residual).max(cv.residual);
        if cu.residual > 1e-6 || cv.residual > 1e-6 {
            return Err(format!("residual {:e} / {:e}", cu.residual, cv.residual));
        }
    }
    Ok(format!("max residual {worst:.1e}"))
}

fn triangular_sector() -> Outcome {
    if !verify_triangular_fundamental() {
        return Err("fundamental relation".into());
    }
    if !verify_internal_relation() {
        return Err("internal relation".into());
    }
    if !identity_diagonal_obstruction() {
        return Err("unit-diagonal obstruction".into());
    }
    Ok("fundamental, internal, obstruction".into())
}

fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { id: 1, name: "quantized Goldman identity, |.| <= 5", limit: secs(60), run: quantum_identity },
        Criterion { id: 2, name: "fundamental relation and staircase area", limit: secs(1), run: fundamental_relation },
        Criterion { id: 3, name: "area phase on random homotopic paths", limit: secs(10), run: area_phase },
        Criterion { id: 4, name: "Pick's theorem on random hulls", limit: secs(10), run: pick_theorem },
        Criterion { id: 5, name: "classical limit, |.| <= 4", limit: secs(60), run: classical_limit },
        Criterion { id: 6, name: "intersection index totals, |.| <= 5", limit: None, run: intersection_totals },
        Criterion { id: 7, name: "rerouted-sum form, |.| <= 3", limit: secs(120), run: rerouted_form },
        Criterion { id: 8, name: "cubic trace identity", limit: secs(5), run: cubic_identity },
        Criterion { id: 9, name: "classification stability", limit: None, run: classification_stability },
        Criterion { id: 10, name: "triangular sector", limit: secs(1), run: triangular_sector },
    ]
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let overrun = c.limit.is_some_and(|l| elapsed > l);
        let (status, detail) = match (&outcome, overrun) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("{msg}; exceeded {:?}", c.limit.unwrap())),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        println!(
            "{status} criterion {:>2}: {} ({detail}) [{:.3}s]",
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
        if status == "FAIL" {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn doubled_shoelace_oracle() {
    assert_eq!(doubled_shoelace(&[(0, 0), (1, 0), (1, 1), (0, 1)]), 2);
    assert_eq!(doubled_shoelace(&[(0, 0), (0, 1), (1, 0)]), -1);
    assert_eq!(doubled_shoelace(&[(0, 0), (3, 3)]), 0);
}
