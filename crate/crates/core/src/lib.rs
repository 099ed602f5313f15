//! Exact combinatorics for generalized roots of the hypersimplex: noncrossing
//! complexes, PK and root polytopes, planar face polynomials with their
//! u-variables, and the planar kinematic basis with noncrossing amplitudes.
//!
//! Everything is exact: integers are `BigInt`, rationals are `BigRational`.

pub mod bits;
pub mod combinat;
pub mod data;
pub mod kinematics;
pub mod linalg;
pub mod lp;
pub mod polynomial;
pub mod polytope;
pub mod rat;
pub mod roots;

mod error;

pub use combinat::{KSubset, NCCollection};
pub use error::{Error, Result};
pub use rat::Q;
pub use roots::{GridVector, NCExpansion};
