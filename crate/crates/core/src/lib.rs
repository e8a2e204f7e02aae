//! Exact quantum holonomy algebra of flat connections on the torus.
//!
//! - [`qscalar`]: Laurent sums in a formal `q` with rational exponents.
//! - [`quantum_torus`]: `XY = qYX` in normal order, trace loops `T(m,n)`.
//! - [`lattice_paths`]: PL paths, signed areas, Pick counts, intersections, reroutings.
//! - [`holonomy`]: holonomies of the constant quantum connection and the area phase.
//! - [`goldman`]: the quantized Goldman bracket, its rerouted form and classical limit.
//! - [`sl2r_moduli`]: numerical classification of `SL(2,ℝ)` holonomies and commuting pairs.
//! - [`triangular_rep`]: upper-triangular quantum matrices in a finitely presented group algebra.
//! - [`exec`]: order-preserving parallel map used by the sweeps.

pub mod error;
pub mod exec;
pub mod goldman;
pub mod holonomy;
pub mod lattice_paths;
pub mod qscalar;
pub mod quantum_torus;
pub mod rational;
pub mod sl2r_moduli;
pub mod triangular_rep;

pub use error::{Error, Result};
pub use exec::Execution;
pub use holonomy::{HolonomyElement, QuantumMatrix};
pub use lattice_paths::{IntegerLoop, IntersectionDatum, LatticePolygon, PLPath, Point};
pub use qscalar::QScalar;
pub use quantum_torus::TorusElement;
pub use rational::Rational;
pub use sl2r_moduli::Mat2;
pub use triangular_rep::{GAElement, TriMatrix};
