//! Exact computations for seminormal affine monoids and fans carrying lattice
//! data: integer lattices, rational polyhedral cones, affine monoids and the
//! correspondence between fans with groups and fans with monoids.

pub mod cone;
pub mod error;
pub mod groups;
pub mod lattice;
pub mod monoid;
pub mod sample;

pub use error::{Error, Result};
