//! Exact combinatorics of surface singularities attached to plane-branch
//! semigroups.
//!
//! Starting from the minimal generators of the value semigroup of a plane
//! branch, the crate derives the characteristic integers, the good
//! Q-resolution of the generic surface carrying that branch as a monomial
//! curve, the exact intersection-matrix determinants, the link
//! classification, the full plumbing graph and, for integral homology sphere
//! links, the splice diagram together with splice-type equations.
//!
//! Everything is computed with arbitrary precision integers and rationals.

pub mod arith;
pub mod detcalc;
mod error;
pub mod linalg;
pub mod plumbing;
pub mod qres;
pub mod quotient;
pub mod semigroup;
pub mod splice;

pub use error::Error;

/// Arbitrary precision integer used by every domain module.
pub type Int = num_bigint::BigInt;
/// Exact rational number.
pub type Rational = num_rational::BigRational;
/// Dense matrix of exact rationals.
pub type RationalMatrix = linalg::Matrix<Rational>;
/// Dense matrix of arbitrary precision integers.
pub type IntMatrix = linalg::Matrix<Int>;

pub use detcalc::{classify_brieskorn_pham, classify_link, LinkClass};
pub use plumbing::PlumbingGraph;
pub use qres::{compute_qresolution, QResolutionData};
pub use semigroup::{derive_from_generators, CharacteristicData};
pub use splice::SpliceDiagram;
