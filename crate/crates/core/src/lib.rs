//! Exact polyhedral geometry for toric mirror transitions.
//!
//! The crate works over `Z` and `Q` only. Polytopes and cones are built by a double description
//! hull, fans are kept face-closed, piecewise linear convex functions are represented by Newton
//! polytopes, lifted subdivisions and their pullbacks and sums, and monomial birational maps act
//! on Laurent polynomials by exponent matrices.

pub mod birational;
pub mod error;
pub mod exactnum;
pub mod fan;
pub mod hull;
pub mod plconvex;
pub mod polytope;
pub mod render;
pub mod scenarios;
pub mod subdivision;

pub use error::{Error, Result};
pub use exactnum::{Integer, LatticeMatrix, LatticeVector, Rational, RationalVector};
pub use fan::{Cone, Fan};
pub use plconvex::PlConvexFunction;
pub use polytope::{Face, Facet, Polytope};
pub use subdivision::LiftedSubdivision;

