//! Holonomy of the constant connection `(r̂₁ dx + r̂₂ dy)·diag(1, −1)` along PL paths.
//!
//! Every holonomy has the normal form `q^φ·e^{a r̂₁ + b r̂₂}`. Segment
//! exponentials are multiplied left to right with
//! `e^{A}e^{B} = q^{(a₁b₂ − b₁a₂)/2}·e^{A+B}`, which follows from `[r̂₁, r̂₂] = iħ`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_paths::{signed_area_between, straight_path, PLPath};
use crate::quantum_torus::TorusElement;
use crate::rational::{self, int, Rational};

/// `q^{phase}·e^{a r̂₁ + b r̂₂}`
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HolonomyElement {
    #[serde(with = "rational::as_string")]
    pub phase: Rational,
    #[serde(with = "rational::as_string")]
    pub a: Rational,
    #[serde(with = "rational::as_string")]
    pub b: Rational,
}

impl HolonomyElement {
    pub fn identity() -> Self {
        Self::exponential(Rational::zero(), Rational::zero())
    }

    /// `e^{a r̂₁ + b r̂₂}` with no phase.
    pub fn exponential(a: Rational, b: Rational) -> Self {
        Self {
            phase: Rational::zero(),
            a,
            b,
        }
    }

    /// `self · other`
    pub fn compose(&self, other: &Self) -> Self {
        let central = (&self.a * &other.b - &self.b * &other.a) / int(2);
        Self {
            phase: &self.phase + &other.phase + central,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }

    /// Multiplication by `q^k`.
    pub fn with_phase_shift(&self, k: &Rational) -> Self {
        Self {
            phase: &self.phase + k,
            ..self.clone()
        }
    }

    fn integer_displacement(&self) -> Result<(i64, i64)> {
        match (rational::to_i64(&self.a), rational::to_i64(&self.b)) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::NonIntegerDisplacement {
                a: rational::format_rational(&self.a),
                b: rational::format_rational(&self.b),
            }),
        }
    }
}

/// Left-to-right product of the segment exponentials of `p`.
pub fn path_holonomy(p: &PLPath) -> HolonomyElement {
    p.segments().fold(HolonomyElement::identity(), |acc, d| {
        acc.compose(&HolonomyElement::exponential(d.x, d.y))
    })
}

/// Normal-ordered image `q^{φ − ab/2}·X^a·Y^b`; needs integer `(a, b)`.
pub fn to_torus_element(h: &HolonomyElement) -> Result<TorusElement> {
    let (a, b) = h.integer_displacement()?;
    let k = &h.phase - Rational::new((a * b).into(), 2.into());
    Ok(TorusElement::monomial(k, a, b))
}

/// The diagonal quantum matrix `diag(q^φ e^{A}, q^φ e^{−A})`, `A = a r̂₁ + b r̂₂`.
///
/// Both entries carry the same phase because the lower entry is the holonomy
/// of `−Â` along the same path. For straight integer paths `φ = 0` and the
/// entries are mutually inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumMatrix {
    pub upper: TorusElement,
    pub lower: TorusElement,
}

impl QuantumMatrix {
    pub fn from_holonomy(h: &HolonomyElement) -> Result<Self> {
        let (a, b) = h.integer_displacement()?;
        let k = &h.phase - Rational::new((a * b).into(), 2.into());
        Ok(Self {
            upper: TorusElement::monomial(k.clone(), a, b),
            lower: TorusElement::monomial(k, -a, -b),
        })
    }

    pub fn of_path(p: &PLPath) -> Result<Self> {
        Self::from_holonomy(&path_holonomy(p))
    }

    /// Operator-valued matrix product; diagonal matrices multiply entrywise.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            upper: &self.upper * &other.upper,
            lower: &self.lower * &other.lower,
        }
    }

    pub fn shift(&self, k: &Rational) -> Self {
        Self {
            upper: self.upper.shift(k),
            lower: self.lower.shift(k),
        }
    }

    pub fn trace(&self) -> TorusElement {
        &self.upper + &self.lower
    }
}

/// Exact test of `Û_{p1} = q^{S(p1,p2)}·Û_{p2}`.
pub fn check_area_phase(p1: &PLPath, p2: &PLPath) -> Result<bool> {
    let s = signed_area_between(p1, p2)?;
    Ok(path_holonomy(p1) == path_holonomy(p2).with_phase_shift(&s))
}

/// Whether `Û_{(m,n)}·Û_{(s,t)} = q^{k}·Û_{(s,t)}·Û_{(m,n)}` for straight paths.
pub fn straight_commutation_holds(m: i64, n: i64, s: i64, t: i64, k: &Rational) -> bool {
    let u = QuantumMatrix::of_path(&straight_path(m, n)).expect("integer path");
    let v = QuantumMatrix::of_path(&straight_path(s, t)).expect("integer path");
    u.mul(&v) == v.mul(&u).shift(k)
}

/// `Û₁Û₂ = q·Û₂Û₁` for the holonomies of the straight loops `(1,0)` and `(0,1)`.
pub fn fundamental_relation_check() -> bool {
    straight_commutation_holds(1, 0, 0, 1, &int(1))
}
