//! Upper-triangular quantum holonomies `[[α, β], [0, α⁻¹]]` realized in the
//! group algebra on a shift `S: ψ(b) ↦ ψ(b+1)`, a multiplication
//! `M: ψ(b) ↦ e^{iħb}ψ(b)` and a parity `P: ψ(b) ↦ ψ(−b)`.
//!
//! Defining relations, with `q = e^{iħ}`:
//!
//! ```text
//! M·S = q⁻¹·S·M     P·S = S⁻¹·P     P·M = M⁻¹·P     P² = 1
//! ```
//!
//! Every element is kept in the normal form `Σ c·S^a·M^b·P^ε`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::qscalar::QScalar;
use crate::rational::int;

/// The word `S^a·M^b·P^ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    pub a: i64,
    pub b: i64,
    pub parity: bool,
}

impl NormalWord {
    pub const IDENTITY: NormalWord = NormalWord {
        a: 0,
        b: 0,
        parity: false,
    };

    /// Product of two normal words: the `q`-exponent and the normal word.
    pub fn compose(self, rhs: NormalWord) -> (i64, NormalWord) {
        // P^ε·S^c·M^d = S^{±c}·M^{±d}·P^ε, then M^b·S^{c'} = q^{−bc'}·S^{c'}·M^b
        let flip = if self.parity { -1 } else { 1 };
        let (c, d) = (flip * rhs.a, flip * rhs.b);
        (
            -(self.b * c),
            NormalWord {
                a: self.a + c,
                b: self.b + d,
                parity: self.parity ^ rhs.parity,
            },
        )
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GAElement {
    terms: BTreeMap<NormalWord, QScalar>,
}

impl GAElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::word(NormalWord::IDENTITY)
    }

    pub fn term(w: NormalWord, coeff: QScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(w, coeff);
        }
        Self { terms }
    }

    pub fn word(w: NormalWord) -> Self {
        Self::term(w, QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::term(NormalWord::IDENTITY, c)
    }

    /// `S^a·M^b·P^ε` with unit coefficient.
    pub fn monomial(a: i64, b: i64, parity: bool) -> Self {
        Self::word(NormalWord { a, b, parity })
    }

    pub fn s() -> Self {
        Self::monomial(1, 0, false)
    }
    pub fn s_inv() -> Self {
        Self::monomial(-1, 0, false)
    }
    pub fn m() -> Self {
        Self::monomial(0, 1, false)
    }
    pub fn m_inv() -> Self {
        Self::monomial(0, -1, false)
    }
    pub fn p() -> Self {
        Self::monomial(0, 0, true)
    }

    fn add_term(&mut self, w: NormalWord, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalWord, &QScalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_term(*w, &(c * v));
        }
        out
    }

    /// No coefficient depends on `q`.
    pub fn is_q_free(&self) -> bool {
        self.terms.values().all(QScalar::is_q_free)
    }

    /// Coefficients specialized to `q = 1`.
    pub fn eval_at_one(&self) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_term(*w, &QScalar::constant(v.eval_at_one()));
        }
        out
    }
}

impl<'a> Mul<&'a GAElement> for &'a GAElement {
    type Output = GAElement;

    fn mul(self, rhs: &'a GAElement) -> GAElement {
        let mut out = GAElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let (k, w) = w1.compose(*w2);
                out.add_term(w, &(c1 * c2).shift(&int(k)));
            }
        }
        out
    }
}

impl<'a> Add<&'a GAElement> for &'a GAElement {
    type Output = GAElement;

    fn add(self, rhs: &'a GAElement) -> GAElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, c);
        }
        out
    }
}

impl<'a> Sub<&'a GAElement> for &'a GAElement {
    type Output = GAElement;

    fn sub(self, rhs: &'a GAElement) -> GAElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, &-c);
        }
        out
    }
}

impl Neg for &GAElement {
    type Output = GAElement;

    fn neg(self) -> GAElement {
        GAElement {
            terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect(),
        }
    }
}

impl fmt::Display for GAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})·")?;
            }
            let mut any = false;
            for (g, e) in [("S", w.a), ("M", w.b)] {
                match e {
                    0 => {}
                    1 => {
                        f.write_str(g)?;
                        any = true;
                    }
                    e => {
                        write!(f, "{g}^{e}")?;
                        any = true;
                    }
                }
            }
            if w.parity {
                f.write_str("P")?;
                any = true;
            }
            if !any {
                f.write_str("1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GAElement({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    a: i64,
    b: i64,
    p: u8,
    coeff: QScalar,
}

#[derive(Serialize, Deserialize)]
struct GARepr {
    terms: Vec<TermRepr>,
}

impl Serialize for GAElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GARepr {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermRepr {
                    a: w.a,
                    b: w.b,
                    p: w.parity as u8,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GAElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GARepr::deserialize(d)?;
        let mut out = GAElement::zero();
        for t in repr.terms {
            if t.p > 1 {
                return Err(serde::de::Error::custom("parity bit must be 0 or 1"));
            }
            let w = NormalWord {
                a: t.a,
                b: t.b,
                parity: t.p == 1,
            };
            out.add_term(w, &t.coeff);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Free-word rewriting
// ---------------------------------------------------------------------------

/// A generator or inverse generator in a free word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    S(i8),
    M(i8),
    P,
}

/// A word `q^k·x₁x₂⋯` reduced by local rewriting steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewriter {
    pub q_exp: i64,
    pub letters: Vec<Letter>,
}

impl Rewriter {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { q_exp: 0, letters }
    }

    fn reducible(x: Letter, y: Letter) -> bool {
        use Letter::*;
        match (x, y) {
            (S(e), S(f)) | (M(e), M(f)) => e == -f,
            (P, P) | (M(_), S(_)) | (P, S(_)) | (P, M(_)) => true,
            _ => false,
        }
    }

    /// Positions `i` where the pair at `i, i+1` can be rewritten.
    pub fn redexes(&self) -> Vec<usize> {
        self.letters
            .windows(2)
            .enumerate()
            .filter(|(_, w)| Self::reducible(w[0], w[1]))
            .map(|(i, _)| i)
            .collect()
    }

    /// Rewrites the pair at `i`.
    pub fn step(&mut self, i: usize) {
        use Letter::*;
        let (x, y) = (self.letters[i], self.letters[i + 1]);
        let replacement: Vec<Letter> = match (x, y) {
            (S(e), S(f)) | (M(e), M(f)) if e == -f => vec![],
            (P, P) => vec![],
            (M(e), S(f)) => {
                self.q_exp -= (e * f) as i64;
                vec![S(f), M(e)]
            }
            (P, S(e)) => vec![S(-e), P],
            (P, M(e)) => vec![M(-e), P],
            _ => panic!("no rewrite rule at position {i}"),
        };
        self.letters.splice(i..i + 2, replacement);
    }

    /// Rewrites until no rule applies, letting `choose` pick among the redexes.
    pub fn reduce_with<F>(mut self, mut choose: F) -> GAElement
    where
        F: FnMut(&[usize]) -> usize,
    {
        loop {
            let redexes = self.redexes();
            if redexes.is_empty() {
                break;
            }
            let pick = choose(&redexes);
            self.step(redexes[pick % redexes.len()]);
        }
        let mut w = NormalWord::IDENTITY;
        for l in &self.letters {
            match l {
                Letter::S(e) => w.a += *e as i64,
                Letter::M(e) => w.b += *e as i64,
                Letter::P => w.parity = !w.parity,
            }
        }
        GAElement::term(w, QScalar::q_pow(int(self.q_exp)))
    }
}

pub fn letter_element(l: Letter) -> GAElement {
    match l {
        Letter::S(e) => GAElement::monomial(e as i64, 0, false),
        Letter::M(e) => GAElement::monomial(0, e as i64, false),
        Letter::P => GAElement::p(),
    }
}

// ---------------------------------------------------------------------------
// Triangular quantum matrices
// ---------------------------------------------------------------------------

/// `[[a11, a12], [0, a22]]` over the group algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriMatrix {
    pub a11: GAElement,
    pub a12: GAElement,
    pub a22: GAElement,
}

impl TriMatrix {
    pub fn new(a11: GAElement, a12: GAElement, a22: GAElement) -> Self {
        Self { a11, a12, a22 }
    }

    /// Ordered product; the lower-left zero is preserved.
    pub fn mul(&self, o: &TriMatrix) -> TriMatrix {
        TriMatrix {
            a11: &self.a11 * &o.a11,
            a12: &(&self.a11 * &o.a12) + &(&self.a12 * &o.a22),
            a22: &self.a22 * &o.a22,
        }
    }

    pub fn scale(&self, c: &QScalar) -> TriMatrix {
        TriMatrix {
            a11: self.a11.scale(c),
            a12: self.a12.scale(c),
            a22: self.a22.scale(c),
        }
    }

    pub fn sub(&self, o: &TriMatrix) -> TriMatrix {
        TriMatrix {
            a11: &self.a11 - &o.a11,
            a12: &self.a12 - &o.a12,
            a22: &self.a22 - &o.a22,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a11.is_zero() && self.a12.is_zero() && self.a22.is_zero()
    }
}

/// `Û₁ = [[S, S·P], [0, S⁻¹]]`
pub fn build_u1() -> TriMatrix {
    TriMatrix::new(GAElement::s(), &GAElement::s() * &GAElement::p(), GAElement::s_inv())
}

/// `Û₂ = [[M, M·P], [0, M⁻¹]]`
pub fn build_u2() -> TriMatrix {
    TriMatrix::new(GAElement::m(), &GAElement::m() * &GAElement::p(), GAElement::m_inv())
}

fn q() -> QScalar {
    QScalar::q_pow(int(1))
}

/// `U₁U₂ − q·U₂U₁`
pub fn fundamental_defect(u1: &TriMatrix, u2: &TriMatrix) -> TriMatrix {
    u1.mul(u2).sub(&u2.mul(u1).scale(&q()))
}

pub fn verify_triangular_fundamental() -> bool {
    fundamental_defect(&build_u1(), &build_u2()).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InternalRelation {
    pub lhs: GAElement,
    pub rhs: GAElement,
    pub holds: bool,
    pub q_free: bool,
}

/// `α·β = β·α⁻¹` for the entries of one triangular matrix.
pub fn internal_relation(u: &TriMatrix) -> InternalRelation {
    let lhs = &u.a11 * &u.a12;
    let rhs = &u.a12 * &u.a22;
    InternalRelation {
        holds: lhs == rhs,
        q_free: lhs.is_q_free() && rhs.is_q_free(),
        lhs,
        rhs,
    }
}

pub fn verify_internal_relation() -> bool {
    [build_u1(), build_u2()].iter().all(|u| {
        let r = internal_relation(u);
        r.holds && r.q_free
    })
}

/// Upper-right entry of `U₁U₂ − q·U₂U₁` for unit diagonals.
pub fn unit_diagonal_off_defect(beta1: &GAElement, beta2: &GAElement) -> GAElement {
    let one = GAElement::identity();
    let u1 = TriMatrix::new(one.clone(), beta1.clone(), one.clone());
    let u2 = TriMatrix::new(one.clone(), beta2.clone(), one);
    fundamental_defect(&u1, &u2).a12
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    /// The defect equals `(1 − q)(β₁ + β₂)` for every sample.
    pub defect_factorizes: bool,
    /// Nonzero `β₁ + β₂` always leaves a nonzero defect.
    pub generic_obstructed: bool,
    /// `β₁ = −β₂` is the only way out: the defect vanishes.
    pub cancelling_escape: bool,
    /// At `q = 1` the condition is empty.
    pub classical_vacuous: bool,
}

impl ObstructionReport {
    pub fn confirmed(&self) -> bool {
        self.defect_factorizes
            && self.generic_obstructed
            && self.cancelling_escape
            && self.classical_vacuous
    }
}

fn obstruction_samples() -> Vec<(GAElement, GAElement)> {
    let (s, m, p) = (GAElement::s(), GAElement::m(), GAElement::p());
    let half = QScalar::q_pow(crate::rational::rat(1, 2));
    vec![
        (&s * &p, &m * &p),
        (s.clone(), GAElement::identity()),
        (
            &s + &(&m * &m).scale(&half),
            &p.scale(&QScalar::constant(int(3))) - &GAElement::s_inv(),
        ),
        (&(&m * &s) * &p, GAElement::m_inv()),
    ]
}

pub fn obstruction_report() -> ObstructionReport {
    let one_minus_q = &QScalar::one() - &q();
    let samples = obstruction_samples();
    let mut defect_factorizes = true;
    let mut generic_obstructed = true;
    let mut classical_vacuous = true;
    for (b1, b2) in &samples {
        let defect = unit_diagonal_off_defect(b1, b2);
        let sum = b1 + b2;
        defect_factorizes &= defect == sum.scale(&one_minus_q);
        generic_obstructed &= sum.is_zero() || !defect.is_zero();
        classical_vacuous &= defect.eval_at_one().is_zero();
    }
    let cancelling_escape = samples
        .iter()
        .all(|(b, _)| unit_diagonal_off_defect(b, &-b).is_zero());
    ObstructionReport {
        defect_factorizes,
        generic_obstructed,
        cancelling_escape,
        classical_vacuous,
    }
}

/// No solution of the fundamental relation has unit diagonals unless the
/// off-diagonal entries cancel.
pub fn identity_diagonal_obstruction() -> bool {
    obstruction_report().confirmed()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrirepReport {
    pub fundamental: bool,
    pub internal: bool,
    pub internal_relations: [InternalRelation; 2],
    pub obstruction: ObstructionReport,
    pub verified: bool,
}

pub fn trirep_report() -> TrirepReport {
    let fundamental = verify_triangular_fundamental();
    let internal_relations = [internal_relation(&build_u1()), internal_relation(&build_u2())];
    let internal = internal_relations.iter().all(|r| r.holds && r.q_free);
    let obstruction = obstruction_report();
    TrirepReport {
        verified: fundamental && internal && obstruction.confirmed(),
        fundamental,
        internal,
        internal_relations,
        obstruction,
    }
}
