//! Exact computations in the q-Onsager algebra and its central quotient.
//!
//! Everything is generic over a coefficient [`scalar::Field`]; the aliases
//! below fix the two fields in use.

pub mod bases;
pub mod error;
pub mod linalg;
pub mod ncpoly;
pub mod reference;
pub mod rewrite;
pub mod scalar;
pub mod series;
pub mod suites;
pub mod tower;
pub mod transition;

pub use error::{Error, Result};

/// Rational functions in q, rho and the deltas.
pub type Scalar = scalar::RatFunc;
/// Exact rationals, for runs at a specialization point.
pub type SpecScalar = num_rational::BigRational;

pub type Poly = ncpoly::NcPoly<Scalar>;
pub type SpecPoly = ncpoly::NcPoly<SpecScalar>;
pub type SymbolicTower = tower::Tower<Scalar>;
pub type SpecTower = tower::Tower<SpecScalar>;
pub type SymbolicRewriteSystem = rewrite::RewriteSystem<Scalar>;
pub type SpecRewriteSystem = rewrite::RewriteSystem<SpecScalar>;
