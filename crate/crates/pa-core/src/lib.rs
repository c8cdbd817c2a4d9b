//! Exact-rational toolkit for building simple permutoassociahedra
//! `PA_{n,c}` as Minkowski sums and mechanically verifying the
//! construction: simplicity, truncator-summand steps, normal equivalence
//! to the reference half-space model, and realisation of the nested-set
//! complex.

pub mod affine;
pub mod bits;
pub mod cone;
pub mod construct;
pub mod dd;
pub mod error;
pub mod halfspace;
pub mod json;
pub mod linalg;
pub mod nested;
pub mod lp;
pub mod polytope;
pub mod rat;
pub mod vec;
pub mod verify;

pub use error::{Error, Result};
pub use rat::{Int, Rat};
