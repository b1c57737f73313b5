use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{validate_groups, FanWithGroups, FanWithMonoids};
use crate::error::{Error, Result};
use crate::lattice::{IntVec, Sublattice};
use crate::monoid::frame::Frame;
use crate::monoid::{m_group, monoid_from_oracle, MembershipOracle, Provenance};

/// Oracle for `Γ_σ = ⨆_{τ ⪯ σ} G_τ ∩ relint(σ^∨ ∩ τ^⊥)`.
pub fn gamma_oracle(x: &FanWithGroups, sigma: usize) -> Result<MembershipOracle> {
    let fan = x.fan();
    if sigma >= fan.len() {
        return Err(Error::ConeNotInFan(sigma.to_string()));
    }
    let d = fan.ambient_dim();
    let dual = fan.cone(sigma).dual();
    let frame = Frame::new(Sublattice::full(d), dual.clone(), x.group(sigma).clone())?;

    // facets of σ^∨ are the rays of σ
    let facet_ray: Vec<usize> = dual
        .facets()
        .iter()
        .map(|f| {
            fan.ray_indices(sigma)
                .iter()
                .copied()
                .find(|&r| fan.rays()[r] == *f)
                .expect("facets of the dual are the rays")
        })
        .collect();
    let groups: HashMap<Vec<usize>, Sublattice> = fan
        .faces_of(sigma)
        .into_iter()
        .map(|t| (fan.ray_indices(t).to_vec(), x.group(t).clone()))
        .collect();
    MembershipOracle::from_faces(Arc::new(frame), Provenance::FunctorGamma, move |mask| {
        let mut tau: Vec<usize> = (0..facet_ray.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| facet_ray[i])
            .collect();
        tau.sort_unstable();
        Ok(groups[&tau].clone())
    })
}

/// Direct membership test in `Γ_σ`: `m ∈ σ^∨` and `m ∈ G_τ` for the face
/// `τ` of rays orthogonal to `m`.
pub fn gamma_member(x: &FanWithGroups, sigma: usize, m: &IntVec) -> Result<bool> {
    let fan = x.fan();
    if sigma >= fan.len() {
        return Err(Error::ConeNotInFan(sigma.to_string()));
    }
    m.check_dim(fan.ambient_dim())?;
    let mut tau = Vec::new();
    for &r in fan.ray_indices(sigma) {
        let v = fan.rays()[r].dot(m);
        if v.is_negative() {
            return Ok(false);
        }
        if v.is_zero() {
            tau.push(r);
        }
    }
    let t = fan.find(&tau).expect("faces of a fan cone are in the fan");
    Ok(x.group(t).contains(m))
}

/// The fan with monoids `Γ_σ` built from the groups.
pub fn functor_f(x: &FanWithGroups) -> Result<FanWithMonoids> {
    let report = validate_groups(x);
    if let Some(f) = report.failures.first() {
        return Err(Error::InvalidGroups(format!(
            "{} at ({{{}}}, {{{}}})",
            f.reason,
            x.fan().key(f.tau),
            x.fan().key(f.sigma)
        )));
    }
    let monoids = (0..x.fan().len())
        .into_par_iter()
        .map(|s| monoid_from_oracle(&gamma_oracle(x, s)?))
        .collect::<Result<Vec<_>>>()?;
    FanWithMonoids::new(x.fan().clone(), monoids)
}

/// `G_σ = M(σ, Γ_σ)` on every cone.
pub fn extract_groups(y: &FanWithMonoids) -> Result<FanWithGroups> {
    let fan = y.fan();
    let groups = (0..fan.len())
        .map(|s| m_group(y.monoid(s), fan.cone(s)))
        .collect::<Result<Vec<_>>>()?;
    FanWithGroups::new(fan.clone(), groups)
}
