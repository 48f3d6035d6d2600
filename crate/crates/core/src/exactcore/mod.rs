//! Exact scalars, sparse graded polynomials and relation rings.

mod poly;
mod rational;
mod relation;

pub use poly::{Monomial, MultiPoly, PolyRecord, Ring, RingRef, VarSpec, Weight};
pub use rational::Rational;
pub use relation::{Derivation, RelationRing};

pub(crate) use poly::same_ring;
