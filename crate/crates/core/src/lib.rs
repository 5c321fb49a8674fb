//! Orbifold biquotients of `SU(3)` by circles and 2-tori: exact singular
//! loci, curvature criteria, and a numeric check of a flat-plane example.

pub mod cohom1;
pub mod curvature;
pub mod error;
pub mod eschenburg6;
pub mod eschenburg7;
pub mod lattice;
pub mod moves;
pub mod numeric;
pub mod special;
pub mod weights;

pub use error::{Error, Result};
