//! Exact integer linear algebra: vectors, matrices, normal forms, sublattices
//! of `Z^d` and homomorphisms between lattices.

mod hom;
mod matrix;
mod normal_form;
mod sublattice;

pub use hom::LatticeHom;
pub use matrix::{Int, IntMatrix, IntVec};
pub use normal_form::{hnf, invariant_factors, snf};
pub use sublattice::{kernel, LatticeIndex, Sublattice};

pub(crate) use normal_form::unimodular_inverse;
pub(crate) use sublattice::gcd_combination;

use crate::error::Result;

/// Smallest subgroup of `Z^d` containing `vs`.
pub fn span(vs: &[IntVec], d: usize) -> Result<Sublattice> {
    Sublattice::span(vs, d)
}

pub fn member(l: &Sublattice, v: &IntVec) -> Result<bool> {
    v.check_dim(l.ambient_dim())?;
    Ok(l.contains(v))
}

pub fn saturate(l: &Sublattice) -> Sublattice {
    l.saturate()
}

pub fn intersect_subspace(l: &Sublattice, w: &[IntVec]) -> Result<Sublattice> {
    l.intersect_subspace(w)
}

pub fn index_in(a: &Sublattice, b: &Sublattice) -> LatticeIndex {
    a.index_in(b)
}

pub fn apply_transpose(phi: &LatticeHom, l: &Sublattice) -> Result<Sublattice> {
    phi.apply_transpose(l)
}
