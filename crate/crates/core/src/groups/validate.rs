use rayon::prelude::*;

use super::{Failure, FanWithGroups, FanWithMonoids, Reason, Report};
use crate::error::{Error, Result};
use crate::lattice::{IntVec, LatticeIndex, Sublattice};
use crate::monoid::{is_semisaturated, m_group, seminormalize, sum_with_group, AffineMonoid};

/// Checks `G_0 = M` and that `G_σ` has finite index in `G_τ ∩ σ^⊥` for
/// every pair `τ ⪯ σ`, including `τ = σ`.
pub fn validate_groups(x: &FanWithGroups) -> Report {
    let fan = x.fan();
    let d = fan.ambient_dim();
    let mut failures = Vec::new();
    if *x.group(0) != Sublattice::full(d) {
        failures.push(Failure {
            condition: 1,
            reason: Reason::G0NotM,
            tau: 0,
            sigma: 0,
            witness: None,
        });
    }
    for sigma in 0..fan.len() {
        let perp = Sublattice::span(fan.cone(sigma).rays(), d)
            .expect("rays have ambient length")
            .orthogonal_complement()
            .basis_vectors();
        for tau in fan.faces_of(sigma) {
            let target = x.group(tau).intersect_subspace(&perp).expect("same ambient dimension");
            let g = x.group(sigma);
            let reason = match g.index_in(&target) {
                LatticeIndex::Finite(_) => continue,
                LatticeIndex::Infinite => Reason::InfiniteIndex,
                LatticeIndex::NotContained => Reason::NotContained,
            };
            let witness = g.basis_vectors().into_iter().find(|b| !target.contains(b));
            failures.push(Failure {
                condition: 2,
                reason,
                tau,
                sigma,
                witness,
            });
        }
    }
    Report { failures }
}

fn first_missing(from: &AffineMonoid, into: &AffineMonoid) -> Result<Option<IntVec>> {
    for g in from.generators() {
        if !into.contains(g)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Checks `Z Γ_σ = M`, `R_{>=0} Γ_σ = σ^∨` and `Γ_τ = Γ_σ + M(τ, Γ_σ)`.
pub fn validate_monoids(y: &FanWithMonoids) -> Result<Report> {
    let fan = y.fan();
    let d = fan.ambient_dim();
    let m = Sublattice::full(d);
    let per_cone = (0..fan.len())
        .into_par_iter()
        .map(|sigma| -> Result<Vec<Failure>> {
            let gamma = y.monoid(sigma);
            let mut out = Vec::new();
            if *gamma.group() != m {
                out.push(Failure {
                    condition: 1,
                    reason: Reason::SpanNotM,
                    tau: sigma,
                    sigma,
                    witness: None,
                });
            }
            let dual = fan.cone(sigma).dual();
            if *gamma.cone() != dual {
                let witness = gamma
                    .cone()
                    .generators()
                    .into_iter()
                    .chain(dual.generators())
                    .find(|g| {
                        !dual.contains(g, crate::cone::ContainMode::Closed).unwrap_or(false)
                            || !gamma
                                .cone()
                                .contains(g, crate::cone::ContainMode::Closed)
                                .unwrap_or(false)
                    });
                out.push(Failure {
                    condition: 1,
                    reason: Reason::ConeMismatch,
                    tau: sigma,
                    sigma,
                    witness,
                });
            }
            for tau in fan.faces_of(sigma) {
                if tau == sigma {
                    continue;
                }
                let local = sum_with_group(gamma, &m_group(gamma, fan.cone(tau))?)?;
                let other = y.monoid(tau);
                let witness = match first_missing(&local, other)? {
                    Some(w) => Some(w),
                    None => first_missing(other, &local)?,
                };
                if witness.is_some() {
                    out.push(Failure {
                        condition: 2,
                        reason: Reason::LocalizationMismatch,
                        tau,
                        sigma,
                        witness,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        failures: per_cone.into_iter().flatten().collect(),
    })
}

/// Replaces every monoid by its seminormalization and checks that the
/// result is still a fan with monoids.
pub fn seminormalize_fan(y: &FanWithMonoids) -> Result<(FanWithMonoids, Report)> {
    let monoids = y
        .monoids()
        .par_iter()
        .map(|s| Ok(seminormalize(s)?.monoid))
        .collect::<Result<Vec<_>>>()?;
    let out = FanWithMonoids::new(y.fan().clone(), monoids)?;
    let report = validate_monoids(&out)?;
    if let Some(f) = report.failures.first() {
        return Err(Error::RevalidationFailure(format!(
            "{} at ({{{}}}, {{{}}})",
            f.reason,
            out.fan().key(f.tau),
            out.fan().key(f.sigma)
        )));
    }
    Ok((out, report))
}

pub fn is_seminormal_fan(y: &FanWithMonoids) -> Result<bool> {
    let flags = y
        .monoids()
        .par_iter()
        .map(is_semisaturated)
        .collect::<Result<Vec<bool>>>()?;
    Ok(flags.into_iter().all(|b| b))
}
