//! The quantum torus: invertible `X`, `Y` with `XY = q·YX`, normal-ordered
//! with every power of `X` to the left of every power of `Y`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::qscalar::QScalar;
use crate::rational::{int, Rational};

/// Finite sum `Σ c_{m,n}·X^m·Y^n` with `c_{m,n}` in [`QScalar`].
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TorusElement {
    terms: BTreeMap<(i64, i64), QScalar>,
}

impl TorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::term(0, 0, QScalar::one())
    }

    pub fn term(m: i64, n: i64, coeff: QScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((m, n), coeff);
        }
        Self { terms }
    }

    /// `q^k·X^m·Y^n`
    pub fn monomial(k: Rational, m: i64, n: i64) -> Self {
        Self::term(m, n, QScalar::q_pow(k))
    }

    pub fn x() -> Self {
        Self::monomial(Rational::zero(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::zero(), 0, 1)
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::term(0, 0, c)
    }

    fn add_term(&mut self, key: (i64, i64), coeff: &QScalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic `(m, n)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: i64, n: i64) -> QScalar {
        self.terms.get(&(m, n)).cloned().unwrap_or_default()
    }

    /// Left multiplication by a central scalar.
    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &(c * v));
        }
        out
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: &Rational) -> Self {
        Self {
            terms: self.terms.iter().map(|(key, v)| (*key, v.shift(k))).collect(),
        }
    }

    /// Applies `f` to every coefficient, keeping the monomials.
    pub fn map_coeffs<F>(&self, mut f: F) -> BTreeMap<(i64, i64), Rational>
    where
        F: FnMut(&QScalar) -> Rational,
    {
        self.terms
            .iter()
            .filter_map(|(k, v)| {
                let c = f(v);
                (!c.is_zero()).then_some((*k, c))
            })
            .collect()
    }

    /// Inverse of a single invertible monomial `c·q^k·X^m·Y^n`.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(m, n), coeff) = self.terms.iter().next()?;
        if coeff.len() != 1 {
            return None;
        }
        let (k, c) = coeff.terms().next()?;
        // (X^m Y^n)^{-1} = Y^{-n} X^{-m} = q^{-mn} X^{-m} Y^{-n}
        let e = -k - int(m * n);
        Some(Self::term(-m, -n, QScalar::monomial(e, c.recip())))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

/// `q`-exponent produced by `(X^m Y^n)(X^s Y^t)`: moving `Y^n` past `X^s`.
pub fn reorder_exponent(n: i64, s: i64) -> i64 {
    -(n * s)
}

impl<'a> Mul<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;

    fn mul(self, rhs: &'a TorusElement) -> TorusElement {
        let mut out = TorusElement::zero();
        for (&(m, n), c1) in &self.terms {
            for (&(s, t), c2) in &rhs.terms {
                let phase = int(reorder_exponent(n, s));
                let c = (c1 * c2).shift(&phase);
                out.add_term((m + s, n + t), &c);
            }
        }
        out
    }
}

impl<'a> Add<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;

    fn add(self, rhs: &'a TorusElement) -> TorusElement {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v);
        }
        out
    }
}

impl<'a> Sub<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;

    fn sub(self, rhs: &'a TorusElement) -> TorusElement {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, &-v);
        }
        out
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;

    fn neg(self) -> TorusElement {
        TorusElement {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

/// `T(m,n) = W + W⁻¹` with `W` the normal-ordered `e^{m r̂₁ + n r̂₂}`:
/// `q^{−mn/2}(X^m Y^n + X^{−m} Y^{−n})`. No factor ½.
pub fn trace_loop(m: i64, n: i64) -> TorusElement {
    let k = Rational::new((-(m * n)).into(), 2.into());
    &TorusElement::monomial(k.clone(), m, n) + &TorusElement::monomial(k, -m, -n)
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, m: i64, n: i64) -> fmt::Result {
    let pow = |f: &mut fmt::Formatter<'_>, g: &str, e: i64| match e {
        0 => Ok(()),
        1 => f.write_str(g),
        e => write!(f, "{g}^{e}"),
    };
    if m == 0 && n == 0 {
        return f.write_str("1");
    }
    pow(f, "X", m)?;
    pow(f, "Y", n)
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(m, n), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                fmt_monomial(f, m, n)?;
            } else {
                write!(f, "({c})·")?;
                fmt_monomial(f, m, n)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusElement({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    m: i64,
    n: i64,
    coeff: QScalar,
}

#[derive(Serialize, Deserialize)]
struct TorusRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for TorusElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TorusRepr {
            terms: self
                .terms
                .iter()
                .map(|(&(m, n), c)| TermRepr { m, n, coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TorusRepr::deserialize(d)?;
        let mut out = TorusElement::zero();
        for t in repr.terms {
            out.add_term((t.m, t.n), &t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn mono(k: Rational, m: i64, n: i64) -> TorusElement {
        TorusElement::monomial(k, m, n)
    }

    #[test]
    fn monomial_constructor() {
        assert_eq!(mono(int(0), 1, 0), TorusElement::x());
        assert_eq!(mono(int(0), 0, 0), TorusElement::identity());
        let w = mono(int(-1), 2, 1);
        assert_eq!(w.coeff(2, 1), QScalar::q_pow(int(-1)));
    }

    #[test]
    fn product_examples() {
        let (x, y) = (TorusElement::x(), TorusElement::y());
        assert_eq!(&x * &y, mono(int(0), 1, 1));
        assert_eq!(&y * &x, mono(int(-1), 1, 1));
        assert_eq!(&mono(int(0), 2, 1) * &mono(int(0), 1, 1), mono(int(-1), 3, 2));
        // XY = q·YX
        assert_eq!(&x * &y, (&y * &x).shift(&int(1)));
    }

    #[test]
    fn commutator_examples() {
        let (x, y) = (TorusElement::x(), TorusElement::y());
        assert!(x.commutator(&x).is_zero());
        let expected = TorusElement::term(1, 1, &QScalar::one() - &QScalar::q_pow(int(-1)));
        assert_eq!(x.commutator(&y), expected);

        let prefactor = QScalar::antisymmetric(rat(1, 2));
        let rhs = (&trace_loop(1, 1) - &trace_loop(1, -1)).scale(&prefactor);
        assert_eq!(trace_loop(1, 0).commutator(&trace_loop(0, 1)), rhs);
    }

    #[test]
    fn trace_loop_examples() {
        assert_eq!(trace_loop(1, 0), &mono(int(0), 1, 0) + &mono(int(0), -1, 0));
        assert_eq!(trace_loop(2, 1), &mono(int(-1), 2, 1) + &mono(int(-1), -2, -1));
        assert_eq!(trace_loop(0, 0), TorusElement::scalar(QScalar::constant(int(2))));
    }

    #[test]
    fn inverse_of_non_monomial_is_none() {
        assert!(trace_loop(1, 0).monomial_inverse().is_none());
        assert!(TorusElement::zero().monomial_inverse().is_none());
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&mono(rat(-1, 2), 1, 1)).unwrap();
        assert_eq!(s, r#"{"terms":[{"m":1,"n":1,"coeff":{"terms":[{"e":"-1/2","c":"1"}]}}]}"#);
        let back: TorusElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, mono(rat(-1, 2), 1, 1));
    }

    fn arb_element() -> impl Strategy<Value = TorusElement> {
        prop::collection::vec((-3i64..=3, -3i64..=3, -4i64..=4, 1i64..=2, -3i64..=3), 0..4).prop_map(
            |v| {
                v.into_iter().fold(TorusElement::zero(), |acc, (m, n, k, kd, c)| {
                    let t = TorusElement::term(m, n, QScalar::monomial(rat(k, kd), int(c)));
                    &acc + &t
                })
            },
        )
    }

    proptest! {
        #[test]
        fn associative(a in arb_element(), b in arb_element(), c in arb_element()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn identity_and_central_q(a in arb_element(), k in -4i64..=4) {
            let id = TorusElement::identity();
            prop_assert_eq!(&a * &id, a.clone());
            prop_assert_eq!(&id * &a, a.clone());
            let qk = TorusElement::scalar(QScalar::q_pow(rat(k, 2)));
            prop_assert_eq!(&qk * &a, &a * &qk);
        }

        #[test]
        fn monomial_inverse_consistent(k in -4i64..=4, m in -5i64..=5, n in -5i64..=5) {
            let w = mono(rat(k, 2), m, n);
            let inv = w.monomial_inverse().unwrap();
            prop_assert_eq!(&w * &inv, TorusElement::identity());
            prop_assert_eq!(&inv * &w, TorusElement::identity());
        }

        #[test]
        fn trace_loop_even(m in -8i64..=8, n in -8i64..=8) {
            prop_assert_eq!(trace_loop(m, n), trace_loop(-m, -n));
        }
    }
}
