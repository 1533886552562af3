//! Exact Grothendieck residues and local duality for zero-dimensional ideals.
//!
//! Everything exact is generic over the coefficient [`Field`]; the
//! differential forms also need [`Conjugate`], and the quadrature
//! cross-checks are generic over `num_traits::Float`. The aliases below fix
//! the scalar types used by the command line tool.

pub mod bmform;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod quad;
pub mod residue;
pub mod resolution;
pub mod sample;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Conjugate, Field, GaussianRational, ToComplex};

/// Polynomial over Q(i).
pub type Poly = poly::MultiPoly<GaussianRational>;
/// Gröbner basis over Q(i).
pub type Groebner = groebner::GroebnerBasis<GaussianRational>;
/// Polynomial over Q.
pub type RationalPoly = poly::MultiPoly<num_rational::BigRational>;
