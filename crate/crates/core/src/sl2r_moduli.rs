//! Classical phase space of flat `SL(2,ℝ)` connections on the torus: conjugacy
//! classes of single holonomies, cells of commuting pairs, and trace coordinates.
//!
//! The four cases are decided by the discriminant `Δ = tr(U)² − 4`:
//!
//! | case | condition | canonical form |
//! |------|-----------|----------------|
//! | A | `Δ > tol` | `diag(λ, λ⁻¹)`, `|λ| > 1` |
//! | B | `|Δ| ≤ tol`, `U ≈ ±I` | `±I` |
//! | C | `|Δ| ≤ tol` otherwise | `[[±1, 1], [0, ±1]]` |
//! | D | `Δ < −tol` | rotation by `θ` |
//!
//! Inputs within `tol` of a boundary land in the lower-dimensional case.
//! "`U ≈ ±I`" means `‖U ∓ I‖_F ≤ √tol`, the scale at which `|Δ| ≤ tol` pins
//! the eigenvalues.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_TOL_DET: f64 = 1e-9;
pub const DEFAULT_COND_CAP: f64 = 1e8;

/// Real 2×2 matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub rows: [[f64; 2]; 2],
}

impl Mat2 {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self {
            rows: [[a, b], [c, d]],
        }
    }

    pub const fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Self::new(a, 0.0, 0.0, d)
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, -s, s, c)
    }

    pub fn from_columns(c0: [f64; 2], c1: [f64; 2]) -> Self {
        Self::new(c0[0], c1[0], c0[1], c1[1])
    }

    pub fn a(&self) -> f64 {
        self.rows[0][0]
    }
    pub fn b(&self) -> f64 {
        self.rows[0][1]
    }
    pub fn c(&self) -> f64 {
        self.rows[1][0]
    }
    pub fn d(&self) -> f64 {
        self.rows[1][1]
    }

    pub fn det(&self) -> f64 {
        self.a() * self.d() - self.b() * self.c()
    }

    pub fn trace(&self) -> f64 {
        self.a() + self.d()
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let r = &self.rows;
        let s = &o.rows;
        Mat2::new(
            r[0][0] * s[0][0] + r[0][1] * s[1][0],
            r[0][0] * s[0][1] + r[0][1] * s[1][1],
            r[1][0] * s[0][0] + r[1][1] * s[1][0],
            r[1][0] * s[0][1] + r[1][1] * s[1][1],
        )
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2::new(self.a() - o.a(), self.b() - o.b(), self.c() - o.c(), self.d() - o.d())
    }

    pub fn scale(&self, k: f64) -> Mat2 {
        Mat2::new(self.a() * k, self.b() * k, self.c() * k, self.d() * k)
    }

    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        Mat2::new(self.d() / det, -self.b() / det, -self.c() / det, self.a() / det)
    }

    pub fn frobenius(&self) -> f64 {
        self.rows.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `σ_max / σ_min` in the spectral norm.
    pub fn condition_number(&self) -> f64 {
        let f2 = self.frobenius().powi(2);
        let det = self.det().abs();
        if det == 0.0 {
            return f64::INFINITY;
        }
        let disc = (f2 * f2 - 4.0 * det * det).max(0.0).sqrt();
        let smax2 = (f2 + disc) / 2.0;
        let smin2 = det * det / smax2;
        (smax2 / smin2).sqrt()
    }

    /// `S⁻¹·self·S`
    pub fn conjugate_by(&self, s: &Mat2) -> Mat2 {
        s.inverse().mul(self).mul(s)
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_finite())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Threshold on the discriminant.
    pub tol: f64,
    /// Relative bound on `|det − 1|`, scaled by `max(1, ‖U‖_F²)`.
    pub tol_det: f64,
    /// Largest acceptable condition number of a returned conjugator.
    pub cond_cap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            tol_det: DEFAULT_TOL_DET,
            cond_cap: DEFAULT_COND_CAP,
        }
    }
}

impl Tolerances {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

/// Conjugacy case without its continuous parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjKind {
    Hyperbolic,
    CentralPlus,
    CentralMinus,
    ParabolicPlus,
    ParabolicMinus,
    Elliptic,
}

impl ConjKind {
    /// Case letter A–D.
    pub fn case(&self) -> char {
        match self {
            ConjKind::Hyperbolic => 'A',
            ConjKind::CentralPlus | ConjKind::CentralMinus => 'B',
            ConjKind::ParabolicPlus | ConjKind::ParabolicMinus => 'C',
            ConjKind::Elliptic => 'D',
        }
    }

    pub fn is_central(&self) -> bool {
        self.case() == 'B'
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "case")]
pub enum ConjTag {
    /// `|λ| > 1`.
    Hyperbolic { lambda: f64 },
    CentralPlus,
    CentralMinus,
    /// `sign` is the sign of the trace.
    Parabolic { sign: i8 },
    /// `θ ∈ (0, π) ∪ (π, 2π)`; the branch is fixed by the sign of the lower-left entry.
    Elliptic { theta: f64 },
}

impl ConjTag {
    pub fn kind(&self) -> ConjKind {
        match self {
            ConjTag::Hyperbolic { .. } => ConjKind::Hyperbolic,
            ConjTag::CentralPlus => ConjKind::CentralPlus,
            ConjTag::CentralMinus => ConjKind::CentralMinus,
            ConjTag::Parabolic { sign } if *sign > 0 => ConjKind::ParabolicPlus,
            ConjTag::Parabolic { .. } => ConjKind::ParabolicMinus,
            ConjTag::Elliptic { .. } => ConjKind::Elliptic,
        }
    }

    pub fn canonical(&self) -> Mat2 {
        match *self {
            ConjTag::Hyperbolic { lambda } => Mat2::diag(lambda, 1.0 / lambda),
            ConjTag::CentralPlus => Mat2::identity(),
            ConjTag::CentralMinus => Mat2::identity().scale(-1.0),
            ConjTag::Parabolic { sign } => {
                let s = sign as f64;
                Mat2::new(s, 1.0, 0.0, s)
            }
            ConjTag::Elliptic { theta } => Mat2::rotation(theta),
        }
    }
}

/// Conjugacy class of a single matrix with a witness `S`: `S⁻¹·U·S ≈ canonical`.
///
/// The conjugator lies in `SL(2,ℝ)` except in case C, where it is normalized to
/// `|det S| = 1` so that the upper-right entry of the canonical form is `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConjClass {
    pub tag: ConjTag,
    pub conjugator: Mat2,
    /// `‖S·C·S⁻¹ − U‖_F / ‖U‖_F`
    pub residual: f64,
}

fn check_unimodular(u: &Mat2, tols: &Tolerances) -> Result<()> {
    let det = u.det();
    let allowed = tols.tol_det * u.frobenius().powi(2).max(1.0);
    if !u.is_finite() || (det - 1.0).abs() > allowed {
        return Err(Error::NotUnimodular { det, tol: allowed });
    }
    Ok(())
}

/// Null vector of `U − μI`, picking the better-conditioned of the two candidates.
fn eigenvector(u: &Mat2, mu: f64) -> [f64; 2] {
    let v1 = [u.b(), mu - u.a()];
    let v2 = [mu - u.d(), u.c()];
    let n1 = v1[0].hypot(v1[1]);
    let n2 = v2[0].hypot(v2[1]);
    if n1 >= n2 {
        [v1[0] / n1, v1[1] / n1]
    } else {
        [v2[0] / n2, v2[1] / n2]
    }
}

fn unit_det(s: Mat2) -> Mat2 {
    let mut s = s.scale(1.0 / s.det().abs().sqrt());
    // `+ 0.0` turns −0.0 into 0.0 so reports print stably
    s.rows.iter_mut().flatten().for_each(|x| *x += 0.0);
    s
}

pub fn classify(u: &Mat2, tol: f64) -> Result<ConjClass> {
    classify_with(u, &Tolerances::with_tol(tol))
}

pub fn classify_with(u: &Mat2, tols: &Tolerances) -> Result<ConjClass> {
    check_unimodular(u, tols)?;
    let tr = u.trace();
    let disc = tr * tr - 4.0;

    let (tag, conjugator) = if disc > tols.tol {
        let sign = if tr >= 0.0 { 1.0 } else { -1.0 };
        let lambda = (tr + sign * disc.sqrt()) / 2.0;
        let v1 = eigenvector(u, lambda);
        let mut v2 = eigenvector(u, 1.0 / lambda);
        let s = Mat2::from_columns(v1, v2);
        if s.det() < 0.0 {
            v2 = [-v2[0], -v2[1]];
        }
        (ConjTag::Hyperbolic { lambda }, unit_det(Mat2::from_columns(v1, v2)))
    } else if disc >= -tols.tol {
        let sign: i8 = if tr >= 0.0 { 1 } else { -1 };
        let sigma = Mat2::identity().scale(sign as f64);
        let nil = u.sub(&sigma);
        if nil.frobenius() <= tols.tol.sqrt() {
            let tag = if sign > 0 {
                ConjTag::CentralPlus
            } else {
                ConjTag::CentralMinus
            };
            (tag, Mat2::identity())
        } else {
            let ne1 = [nil.a(), nil.c()];
            let ne2 = [nil.b(), nil.d()];
            let (w, nw) = if ne1[0].hypot(ne1[1]) >= ne2[0].hypot(ne2[1]) {
                ([1.0, 0.0], ne1)
            } else {
                ([0.0, 1.0], ne2)
            };
            (ConjTag::Parabolic { sign }, unit_det(Mat2::from_columns(nw, w)))
        }
    } else {
        let cos = (tr / 2.0).clamp(-1.0, 1.0);
        let sin = (1.0 - cos * cos).sqrt().copysign(u.c());
        let mut theta = sin.atan2(cos);
        if theta < 0.0 {
            theta += TAU;
        }
        let j = u.sub(&Mat2::identity().scale(cos)).scale(1.0 / sin);
        let s = Mat2::from_columns([1.0, 0.0], [j.a(), j.c()]);
        (ConjTag::Elliptic { theta }, unit_det(s))
    };

    let cond = conjugator.condition_number();
    if !cond.is_finite() || cond > tols.cond_cap {
        return Err(Error::IllConditioned {
            cond,
            cap: tols.cond_cap,
        });
    }
    let rebuilt = conjugator.mul(&tag.canonical()).mul(&conjugator.inverse());
    let residual = rebuilt.sub(u).frobenius() / u.frobenius();
    Ok(ConjClass {
        tag,
        conjugator,
        residual,
    })
}

/// Continuous parameters of a commuting pair in its joint canonical basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "family")]
pub enum Cell {
    /// Simultaneously diagonal: `U_i ~ diag(λ_i, λ_i⁻¹)`.
    Diagonal { lambda1: f64, lambda2: f64 },
    /// Simultaneous rotations.
    Rotation { theta1: f64, theta2: f64 },
    /// `U_i ~ [[σ_i, β_i], [0, σ_i]]`, with `α = atan(β₂/β₁)` (or `±π/2` when `β₁ = 0`).
    Unipotent { sign1: i8, sign2: i8, alpha: f64 },
    /// Both central.
    Central { sign1: i8, sign2: i8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CellDescriptor {
    pub kinds: [ConjKind; 2],
    pub cell: Cell,
    pub conjugator: Mat2,
    pub commutator_norm: f64,
    /// Size of the entries of the second matrix that the joint form requires to vanish.
    pub joint_residual: f64,
}

impl CellDescriptor {
    /// `(A,A)`, `(C,C)`, ...
    pub fn label(&self) -> String {
        format!("({},{})", self.kinds[0].case(), self.kinds[1].case())
    }
}

impl fmt::Display for CellDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.label(), self.cell)
    }
}

fn central_sign(kind: ConjKind) -> i8 {
    if kind == ConjKind::CentralMinus {
        -1
    } else {
        1
    }
}

fn commutator_check(u1: &Mat2, u2: &Mat2, tol: f64) -> Result<f64> {
    let norm = u1.mul(u2).sub(&u2.mul(u1)).frobenius();
    let allowed = tol * (u1.frobenius() * u2.frobenius()).max(1.0);
    if norm > allowed {
        return Err(Error::NonCommuting { norm, tol: allowed });
    }
    Ok(norm)
}

fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

pub fn classify_pair(u1: &Mat2, u2: &Mat2, tol: f64) -> Result<CellDescriptor> {
    classify_pair_with(u1, u2, &Tolerances::with_tol(tol))
}

pub fn classify_pair_with(u1: &Mat2, u2: &Mat2, tols: &Tolerances) -> Result<CellDescriptor> {
    let commutator_norm = commutator_check(u1, u2, tols.tol)?;
    let c1 = classify_with(u1, tols)?;
    let c2 = classify_with(u2, tols)?;
    let kinds = [c1.tag.kind(), c2.tag.kind()];

    let leader_first = !kinds[0].is_central();
    if kinds[0].is_central() && kinds[1].is_central() {
        return Ok(CellDescriptor {
            kinds,
            cell: Cell::Central {
                sign1: central_sign(kinds[0]),
                sign2: central_sign(kinds[1]),
            },
            conjugator: Mat2::identity(),
            commutator_norm,
            joint_residual: 0.0,
        });
    }
    let s = if leader_first { c1.conjugator } else { c2.conjugator };
    let j1 = u1.conjugate_by(&s);
    let j2 = u2.conjugate_by(&s);
    let leader_kind = if leader_first { kinds[0] } else { kinds[1] };

    let (cell, joint_residual) = match leader_kind.case() {
        'A' => (
            Cell::Diagonal {
                lambda1: j1.a(),
                lambda2: j2.a(),
            },
            j1.b().abs().max(j1.c().abs()).max(j2.b().abs()).max(j2.c().abs()),
        ),
        'D' => (
            Cell::Rotation {
                theta1: normalize_angle(j1.c().atan2(j1.a())),
                theta2: normalize_angle(j2.c().atan2(j2.a())),
            },
            (j1.a() - j1.d())
                .abs()
                .max((j1.b() + j1.c()).abs())
                .max((j2.a() - j2.d()).abs())
                .max((j2.b() + j2.c()).abs()),
        ),
        _ => {
            let (mut b1, mut b2) = (j1.b(), j2.b());
            if b1 < 0.0 || (b1 == 0.0 && b2 < 0.0) {
                b1 = -b1;
                b2 = -b2;
            }
            let sign_of = |k: ConjKind| match k {
                ConjKind::ParabolicMinus | ConjKind::CentralMinus => -1,
                _ => 1,
            };
            (
                Cell::Unipotent {
                    sign1: sign_of(kinds[0]),
                    sign2: sign_of(kinds[1]),
                    alpha: b2.atan2(b1),
                },
                j1.c().abs().max(j2.c().abs()).max((j2.a() - j2.d()).abs()),
            )
        }
    };
    Ok(CellDescriptor {
        kinds,
        cell,
        conjugator: s,
        commutator_norm,
        joint_residual,
    })
}

/// Half-traces of `U₁`, `U₂`, `U₁U₂` and the cubic identity residual.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceTriple {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    /// `T₁² + T₂² + T₃² − 2T₁T₂T₃ − 1`
    pub cubic_residual: f64,
    /// `(r₁, r₂)` with `T₁ = cosh r₁`, `T₂ = cosh r₂`, `T₃ = cosh(r₁ + r₂)`, for
    /// simultaneously diagonal pairs with positive traces.
    pub r: Option<(f64, f64)>,
}

pub fn cubic_residual(t1: f64, t2: f64, t3: f64) -> f64 {
    t1 * t1 + t2 * t2 + t3 * t3 - 2.0 * t1 * t2 * t3 - 1.0
}

pub fn trace_triple(u1: &Mat2, u2: &Mat2, tol: f64) -> Result<TraceTriple> {
    commutator_check(u1, u2, tol)?;
    let t1 = u1.trace() / 2.0;
    let t2 = u2.trace() / 2.0;
    let t3 = u1.mul(u2).trace() / 2.0;
    let r = match classify_pair(u1, u2, tol).map(|d| d.cell) {
        Ok(Cell::Diagonal { lambda1, lambda2 }) if lambda1 > 0.0 && lambda2 > 0.0 => {
            Some((lambda1.ln(), lambda2.ln()))
        }
        _ => None,
    };
    Ok(TraceTriple {
        t1,
        t2,
        t3,
        cubic_residual: cubic_residual(t1, t2, t3),
        r,
    })
}

/// `cosh(r₁+r₂) − cosh r₁·cosh r₂ = sinh r₁·sinh r₂`, i.e. `{T₁, T₂} = T₃ − T₁T₂`
/// under `{r₁, r₂} = 1`. Relative tolerance `10⁻¹²` against `max(1, cosh r₁·cosh r₂)`.
pub fn poisson_parametrization_check(r1: f64, r2: f64) -> bool {
    let lhs = (r1 + r2).cosh() - r1.cosh() * r2.cosh();
    let rhs = r1.sinh() * r2.sinh();
    let scale = (r1.cosh() * r2.cosh()).max(1.0);
    (lhs - rhs).abs() <= 1e-12 * scale
}

/// Angle in `[0, π]` between `θ` and `φ` on the circle.
pub fn angle_distance(theta: f64, phi: f64) -> f64 {
    let d = (theta - phi).rem_euclid(TAU);
    d.min(TAU - d).min(PI)
}
