//! Finite Laurent sums `Σ cᵢ q^{eᵢ}` with rational exponents and coefficients.
//!
//! `q` is a formal symbol throughout. The only numerical information ever
//! extracted from a [`QScalar`] is its value at `q = 1` and the first-order
//! coefficient of `q = e^{ε}` around `ε = 0`, which is what the classical limit
//! needs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{self, Rational};

/// Exact element of the commutative ring of rational-exponent Laurent sums in `q`.
///
/// Terms are kept sparse and sorted by ascending exponent; no zero coefficient
/// is ever stored, so structural equality is ring equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QScalar {
    terms: BTreeMap<Rational, Rational>,
}

impl QScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Rational::zero(), c)
    }

    /// `c·q^e`
    pub fn monomial(e: Rational, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `q^e`
    pub fn q_pow(e: Rational) -> Self {
        Self::monomial(e, Rational::one())
    }

    /// Builds the canonical form of `Σ c·q^e`, merging repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// `q^{x} − q^{−x}`, the prefactor shape of the quantized bracket.
    pub fn antisymmetric(x: Rational) -> Self {
        Self::from_terms([(x.clone(), Rational::one()), (-x, -Rational::one())])
    }

    fn add_term(&mut self, e: Rational, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    /// True when the element is a rational constant, i.e. carries no `q`.
    pub fn is_q_free(&self) -> bool {
        self.terms.keys().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: &Rational) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Value at `q = 1`: `Σ cᵢ`.
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// First-order coefficient under `q = e^{ε}`: `Σ cᵢ·eᵢ`.
    pub fn derivative_at_one(&self) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (e, c)| acc + e * c)
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;

    fn add(self, rhs: &'a QScalar) -> QScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;

    fn sub(self, rhs: &'a QScalar) -> QScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;

    fn mul(self, rhs: &'a QScalar) -> QScalar {
        let mut out = QScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &QScalar {
    type Output = QScalar;

    fn neg(self) -> QScalar {
        QScalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if e.is_zero() {
                write!(f, "{}", rational::format_rational(&mag))?;
                continue;
            }
            if !unit {
                write!(f, "{}·", rational::format_rational(&mag))?;
            }
            if e.is_one() {
                f.write_str("q")?;
            } else {
                write!(f, "q^({})", rational::format_rational(e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    #[serde(with = "rational::as_string")]
    e: Rational,
    #[serde(with = "rational::as_string")]
    c: Rational,
}

#[derive(Serialize, Deserialize)]
struct QScalarRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QScalarRepr {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    e: e.clone(),
                    c: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = QScalarRepr::deserialize(d)?;
        Ok(QScalar::from_terms(repr.terms.into_iter().map(|t| (t.e, t.c))))
    }
}
