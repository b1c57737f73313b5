//! Rational cones: simplicial cones, general cones with lineality, duals,
//! faces and fans.

mod fan;
mod fm;
mod gencone;
mod simplicial;

pub use fan::{fan_hom_check, Fan, FanHomCertificate};
pub use gencone::{ContainMode, GenCone};
pub use simplicial::SimplicialCone;

use crate::error::Result;
use crate::lattice::{IntVec, Sublattice};

pub fn make_cone(d: usize, rays: &[IntVec]) -> Result<SimplicialCone> {
    SimplicialCone::new(d, rays)
}

pub fn dual_cone(sigma: &SimplicialCone) -> GenCone {
    sigma.dual()
}

pub fn faces(sigma: &SimplicialCone) -> Vec<SimplicialCone> {
    sigma.faces()
}

pub fn cone_contains(c: &GenCone, v: &IntVec, mode: ContainMode) -> Result<bool> {
    c.contains(v, mode)
}

pub fn minimal_face_containing(sigma: &SimplicialCone, v: &IntVec) -> Result<SimplicialCone> {
    sigma.minimal_face_containing(v)
}

pub fn tau_star(sigma: &SimplicialCone, tau: &SimplicialCone) -> Result<GenCone> {
    sigma.tau_star(tau)
}

pub fn perp_lattice(tau: &SimplicialCone, m: &Sublattice) -> Result<Sublattice> {
    tau.perp_lattice(m)
}

pub fn fan_from_max_cones(d: usize, max_cones: &[SimplicialCone]) -> Result<Fan> {
    Fan::from_max_cones(d, max_cones)
}
