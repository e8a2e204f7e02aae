//! The quantized Goldman bracket for straight integer loops:
//!
//! `[T(m,n), T(s,t)] = (q^{N/2} − q^{−N/2})·(T(m+s,n+t) − T(m−s,n−t))`, `N = mt − ns`,
//!
//! checked exactly, together with its rerouted-loop form and its classical limit.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::exec::{self, Execution};
use crate::holonomy::QuantumMatrix;
use crate::lattice_paths::{
    intersections, reroute, signed_area_between, straight_path, IntegerLoop, IntersectionDatum,
    PLPath,
};
use crate::qscalar::QScalar;
use crate::quantum_torus::{trace_loop, TorusElement};
use crate::rational::{int, rat, Rational};

pub type Quadruple = [i64; 4];

pub fn intersection_number(m: i64, n: i64, s: i64, t: i64) -> i64 {
    m * t - n * s
}

/// `[T(m,n), T(s,t)]`
pub fn qgoldman_lhs(m: i64, n: i64, s: i64, t: i64) -> TorusElement {
    trace_loop(m, n).commutator(&trace_loop(s, t))
}

/// `(q^{N/2} − q^{−N/2})·(T(m+s,n+t) − T(m−s,n−t))`
pub fn qgoldman_rhs(m: i64, n: i64, s: i64, t: i64) -> TorusElement {
    let prefactor = QScalar::antisymmetric(rat(intersection_number(m, n, s, t), 2));
    (&trace_loop(m + s, n + t) - &trace_loop(m - s, n - t)).scale(&prefactor)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoldmanReport {
    pub quadruple: Quadruple,
    pub verified: bool,
    pub classical: bool,
    pub lhs: TorusElement,
    pub rhs: TorusElement,
}

pub fn verify_qgoldman(m: i64, n: i64, s: i64, t: i64) -> GoldmanReport {
    let lhs = qgoldman_lhs(m, n, s, t);
    let rhs = qgoldman_rhs(m, n, s, t);
    GoldmanReport {
        quadruple: [m, n, s, t],
        verified: lhs == rhs,
        classical: classical_goldman_check(m, n, s, t),
        lhs,
        rhs,
    }
}

// ---------------------------------------------------------------------------
// Classical limit
// ---------------------------------------------------------------------------

/// Commutative Laurent polynomial in `X`, `Y` with rational coefficients.
pub type ClassicalPoly = BTreeMap<(i64, i64), Rational>;

fn poly_add_term(p: &mut ClassicalPoly, key: (i64, i64), c: Rational) {
    let slot = p.entry(key).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&key);
    }
}

/// `T̄(m,n) = X^m Y^n + X^{−m} Y^{−n}` at `q = 1`.
pub fn classical_trace(m: i64, n: i64) -> ClassicalPoly {
    let mut p = ClassicalPoly::new();
    poly_add_term(&mut p, (m, n), Rational::one());
    poly_add_term(&mut p, (-m, -n), Rational::one());
    p
}

/// First-order part of `[T(m,n), T(s,t)]` under `q = e^{ε}`, as a classical polynomial.
pub fn classical_lhs(m: i64, n: i64, s: i64, t: i64) -> ClassicalPoly {
    qgoldman_lhs(m, n, s, t).map_coeffs(QScalar::derivative_at_one)
}

/// `(mt − ns)·(T̄(m+s,n+t) − T̄(m−s,n−t))`
pub fn classical_rhs(m: i64, n: i64, s: i64, t: i64) -> ClassicalPoly {
    let k = int(intersection_number(m, n, s, t));
    let mut p = ClassicalPoly::new();
    for (key, c) in classical_trace(m + s, n + t) {
        poly_add_term(&mut p, key, c * &k);
    }
    for (key, c) in classical_trace(m - s, n - t) {
        poly_add_term(&mut p, key, -(c * &k));
    }
    p
}

pub fn classical_goldman_check(m: i64, n: i64, s: i64, t: i64) -> bool {
    classical_lhs(m, n, s, t) == classical_rhs(m, n, s, t)
}

/// Linear combination of classical trace functions `Σ c_v T(v)`, keyed by the
/// representative of `{v, −v}` with positive first nonzero coordinate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceCombo(BTreeMap<(i64, i64), Rational>);

fn canonical(v: (i64, i64)) -> (i64, i64) {
    if v.0 < 0 || (v.0 == 0 && v.1 < 0) {
        (-v.0, -v.1)
    } else {
        v
    }
}

impl TraceCombo {
    pub fn single(m: i64, n: i64) -> Self {
        let mut c = Self::default();
        c.add(canonical((m, n)), Rational::one());
        c
    }

    fn add(&mut self, key: (i64, i64), c: Rational) {
        let key = canonical(key);
        let slot = self.0.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.0 {
            out.add(*k, c.clone());
        }
        out
    }

    /// Bilinear extension of `{T(a), T(b)} = (a × b)(T(a+b) − T(a−b))`.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(m, n), c1) in &self.0 {
            for (&(s, t), c2) in &other.0 {
                let k = int(intersection_number(m, n, s, t)) * c1 * c2;
                out.add((m + s, n + t), k.clone());
                out.add((m - s, n - t), -k);
            }
        }
        out
    }
}

/// `{T_a,{T_b,T_c}} + {T_b,{T_c,T_a}} + {T_c,{T_a,T_b}} = 0` from the classical formula.
pub fn classical_jacobi_holds(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> bool {
    let (ta, tb, tc) = (
        TraceCombo::single(a.0, a.1),
        TraceCombo::single(b.0, b.1),
        TraceCombo::single(c.0, c.1),
    );
    ta.bracket(&tb.bracket(&tc))
        .plus(&tb.bracket(&tc.bracket(&ta)))
        .plus(&tc.bracket(&ta.bracket(&tb)))
        .is_zero()
}

// ---------------------------------------------------------------------------
// Rerouted-loop form
// ---------------------------------------------------------------------------

/// One intersection's contribution to the rerouted sum.
#[derive(Clone, Debug, Serialize)]
pub struct ReroutedTerm {
    pub intersection: IntersectionDatum,
    /// Position in the ordering of intersections along the first loop.
    pub rank: usize,
    pub plus_path: PLPath,
    pub minus_path: PLPath,
    /// Signed area between each rerouted loop and the straight loop it is homotopic to.
    #[serde(serialize_with = "ser_rational")]
    pub plus_area: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub minus_area: Rational,
    /// `ε_S·(q^{1/2} − q^{−1/2})·q^{(|N|−1)/2 − rank}`
    pub weight: QScalar,
    /// Area-normalized traces `q^{−S}·tr Û` of the two rerouted loops.
    pub plus_trace: TorusElement,
    pub minus_trace: TorusElement,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational::format_rational(r))
}

/// Trace of the rerouted loop's holonomy with its area phase relative to the
/// straight loop of the same displacement removed.
fn normalized_trace(path: &PLPath) -> Result<(Rational, TorusElement)> {
    let d = path.displacement();
    let (a, b) = (
        crate::rational::to_i64(&d.x).expect("rerouted loops close on the lattice"),
        crate::rational::to_i64(&d.y).expect("rerouted loops close on the lattice"),
    );
    let area = signed_area_between(path, &straight_path(a, b))?;
    let trace = QuantumMatrix::of_path(path)?.trace().shift(&-area.clone());
    Ok((area, trace))
}

/// Per-intersection terms; empty for parallel or null loops.
///
/// The `j`-th intersection along the first loop carries the half-integer
/// phase `(|N|−1)/2 − j`, which spreads the `|N|` terms symmetrically about
/// `q⁰`. Summed, the phases give the quantum integer
/// `(q^{|N|/2} − q^{−|N|/2})/(q^{1/2} − q^{−1/2})`.
pub fn rerouted_terms(m: i64, n: i64, s: i64, t: i64) -> Result<Vec<ReroutedTerm>> {
    let big_n = intersection_number(m, n, s, t);
    if big_n == 0 {
        return Ok(Vec::new());
    }
    let (l1, l2) = (IntegerLoop::new(m, n), IntegerLoop::new(s, t));
    let total = big_n.unsigned_abs() as i64;
    let unit = QScalar::antisymmetric(rat(1, 2));
    intersections(l1, l2)?
        .into_iter()
        .enumerate()
        .map(|(rank, datum)| {
            let plus_path = reroute(l1, l2, &datum, false)?;
            let minus_path = reroute(l1, l2, &datum, true)?;
            let (plus_area, plus_trace) = normalized_trace(&plus_path)?;
            let (minus_area, minus_trace) = normalized_trace(&minus_path)?;
            let phase = rat(total - 1 - 2 * rank as i64, 2);
            let weight = unit.shift(&phase).scale(&int(datum.index as i64));
            Ok(ReroutedTerm {
                intersection: datum,
                rank,
                plus_path,
                minus_path,
                plus_area,
                minus_area,
                weight,
                plus_trace,
                minus_trace,
            })
        })
        .collect()
}

/// `Σ_S weight_S·(tr Û_{l1 S l2} − tr Û_{l1 S l2⁻¹})` with area-normalized traces.
pub fn rerouted_sum(m: i64, n: i64, s: i64, t: i64) -> Result<TorusElement> {
    Ok(rerouted_terms(m, n, s, t)?
        .iter()
        .fold(TorusElement::zero(), |acc, term| {
            let diff = &term.plus_trace - &term.minus_trace;
            &acc + &diff.scale(&term.weight)
        }))
}

pub fn rerouted_check(m: i64, n: i64, s: i64, t: i64) -> Result<bool> {
    Ok(rerouted_sum(m, n, s, t)? == qgoldman_rhs(m, n, s, t))
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// All quadruples with every entry in `[−max, max]`, in lexicographic order.
pub fn quadruples(max: i64) -> Vec<Quadruple> {
    let r = -max..=max;
    let mut out = Vec::new();
    for m in r.clone() {
        for n in r.clone() {
            for s in r.clone() {
                for t in r.clone() {
                    out.push([m, n, s, t]);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub checked: usize,
    pub counterexamples: Vec<Quadruple>,
}

impl CheckTally {
    fn from_results(quads: &[Quadruple], ok: &[bool]) -> Self {
        Self {
            checked: quads.len(),
            counterexamples: quads
                .iter()
                .zip(ok)
                .filter(|(_, ok)| !**ok)
                .map(|(q, _)| *q)
                .collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub max: i64,
    pub classical: bool,
    pub rerouted: bool,
    pub exec: Execution,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            max: 5,
            classical: false,
            rerouted: false,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max: i64,
    pub verified: bool,
    pub quantum: CheckTally,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical: Option<CheckTally>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rerouted: Option<CheckTally>,
}

/// Exact check of the quantized bracket over `|m|,|n|,|s|,|t| ≤ max`.
pub fn verify_range(max: i64, exec: Execution) -> CheckTally {
    let quads = quadruples(max);
    let ok = exec::map(&quads, exec, |&[m, n, s, t]| {
        qgoldman_lhs(m, n, s, t) == qgoldman_rhs(m, n, s, t)
    });
    CheckTally::from_results(&quads, &ok)
}

pub fn classical_range(max: i64, exec: Execution) -> CheckTally {
    let quads = quadruples(max);
    let ok = exec::map(&quads, exec, |&[m, n, s, t]| classical_goldman_check(m, n, s, t));
    CheckTally::from_results(&quads, &ok)
}

/// Rerouted-sum check over the non-parallel quadruples in range.
pub fn rerouted_range(max: i64, exec: Execution) -> CheckTally {
    let quads: Vec<Quadruple> = quadruples(max)
        .into_iter()
        .filter(|&[m, n, s, t]| intersection_number(m, n, s, t) != 0)
        .collect();
    let ok = exec::map(&quads, exec, |&[m, n, s, t]| {
        rerouted_check(m, n, s, t).unwrap_or(false)
    });
    CheckTally::from_results(&quads, &ok)
}

pub fn sweep(opts: SweepOptions) -> SweepReport {
    let quantum = verify_range(opts.max, opts.exec);
    let classical = opts.classical.then(|| classical_range(opts.max, opts.exec));
    let rerouted = opts.rerouted.then(|| rerouted_range(opts.max, opts.exec));
    let verified = quantum.passed()
        && classical.as_ref().is_none_or(CheckTally::passed)
        && rerouted.as_ref().is_none_or(CheckTally::passed);
    SweepReport {
        max: opts.max,
        verified,
        quantum,
        classical,
        rerouted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomy::to_torus_element;
    use crate::holonomy::path_holonomy;

    fn t(m: i64, n: i64) -> TorusElement {
        trace_loop(m, n)
    }

    #[test]
    fn lhs_examples() {
        let expected = (&t(1, 1) - &t(1, -1)).scale(&QScalar::antisymmetric(rat(1, 2)));
        assert_eq!(qgoldman_lhs(1, 0, 0, 1), expected);
        assert!(qgoldman_lhs(1, 1, 2, 2).is_zero());
        let expected = (&t(2, 0) - &t(0, 2)).scale(&(&QScalar::q_pow(int(-1)) - &QScalar::q_pow(int(1))));
        assert_eq!(qgoldman_lhs(1, 1, 1, -1), expected);
    }

    #[test]
    fn rhs_examples() {
        let unit = QScalar::antisymmetric(rat(1, 2));
        assert_eq!(qgoldman_rhs(1, 0, 0, 1), (&t(1, 1) - &t(1, -1)).scale(&unit));
        assert!(qgoldman_rhs(2, 4, 1, 2).is_zero());
        assert_eq!(qgoldman_rhs(2, 1, 1, 1), (&t(3, 2) - &t(1, 0)).scale(&unit));
    }

    #[test]
    fn verify_examples() {
        let r = verify_qgoldman(1, 0, 0, 1);
        assert!(r.verified && r.classical);
        let r = verify_qgoldman(0, 0, 3, -2);
        assert!(r.verified && r.lhs.is_zero());
    }

    #[test]
    fn classical_examples() {
        assert!(classical_goldman_check(1, 0, 0, 1));
        let lhs = classical_lhs(1, 0, 0, 1);
        assert_eq!(lhs.get(&(1, 1)), Some(&int(1)));
        assert!(classical_goldman_check(2, 2, 1, 1));
        assert!(classical_lhs(2, 2, 1, 1).is_empty());
    }

    #[test]
    fn classical_check_detects_wrong_coefficient() {
        let mut wrong = classical_rhs(2, 1, 1, 1);
        *wrong.get_mut(&(3, 2)).unwrap() += Rational::one();
        assert_ne!(classical_lhs(2, 1, 1, 1), wrong);
    }

    #[test]
    fn rerouted_examples() {
        let terms = rerouted_terms(1, 0, 0, 1).unwrap();
        assert_eq!(terms.len(), 1);
        // each rerouted trace is an area-phase multiple of the straight trace
        let plus = QuantumMatrix::of_path(&terms[0].plus_path).unwrap().trace();
        assert_eq!(plus, t(1, 1).shift(&terms[0].plus_area));
        let minus = QuantumMatrix::of_path(&terms[0].minus_path).unwrap().trace();
        assert_eq!(minus, t(1, -1).shift(&terms[0].minus_area));

        assert!(rerouted_sum(1, 1, 2, 2).unwrap().is_zero());
        let unit = QScalar::antisymmetric(rat(1, 2));
        assert_eq!(rerouted_sum(2, 1, 1, 1).unwrap(), (&t(3, 2) - &t(1, 0)).scale(&unit));
    }

    #[test]
    fn rerouted_with_multiplicity() {
        assert!(rerouted_check(1, 0, 0, 2).unwrap());
        assert!(rerouted_check(2, 0, 0, -3).unwrap());
        assert!(rerouted_check(0, 0, 1, 1).unwrap());
    }

    #[test]
    fn rerouted_holonomy_endpoint_agrees() {
        let terms = rerouted_terms(2, 1, 1, 1).unwrap();
        let h = path_holonomy(&terms[0].plus_path);
        let img = to_torus_element(&h).unwrap();
        assert_eq!(img.terms().next().unwrap().0, &(3, 2));
    }

    #[test]
    fn antisymmetry_small() {
        for [m, n, s, tt] in quadruples(2) {
            assert_eq!(qgoldman_lhs(m, n, s, tt), -&qgoldman_lhs(s, tt, m, n));
        }
    }

    #[test]
    fn jacobi_small() {
        assert!(classical_jacobi_holds((1, 0), (0, 1), (1, 1)));
        assert!(classical_jacobi_holds((2, -1), (1, 3), (-1, 2)));
    }

    #[test]
    fn bracket_formula_is_not_trivially_jacobi() {
        // sign flip in one term breaks the identity, so the check has teeth
        let (a, b, c) = ((1, 0), (0, 1), (1, 1));
        let ta = TraceCombo::single(a.0, a.1);
        let tb = TraceCombo::single(b.0, b.1);
        let tc = TraceCombo::single(c.0, c.1);
        let skewed = ta
            .bracket(&tb.bracket(&tc))
            .plus(&tb.bracket(&tc.bracket(&ta)))
            .plus(&ta.bracket(&tb).bracket(&tc));
        assert!(!skewed.is_zero());
    }

    #[test]
    fn small_sweep_all_modes_agree() {
        let opts = SweepOptions {
            max: 2,
            classical: true,
            rerouted: true,
            exec: Execution::Sequential,
        };
        let seq = sweep(opts);
        assert!(seq.verified);
        let par = sweep(SweepOptions { exec: Execution::Parallel, ..opts });
        assert_eq!(seq, par);
        assert_eq!(seq.quantum.checked, 625);
    }
}
