//! Equivariant homology over GF(2) for finite group actions on finite
//! cell complexes, truncated Poincaré series arithmetic, and polynomial
//! invariant quotients.

pub mod complex;
pub mod descriptor;
pub mod error;
pub mod gf2;
pub mod group;
pub mod homology;
pub mod invariant;
pub mod poincare;
pub mod resolution;
pub mod series;

pub use error::{Error, Result};
