use super::{FanWithGroups, FanWithMonoids};
use crate::cone::{fan_hom_check, Fan, FanHomCertificate};
use crate::error::{Error, Result};
use crate::lattice::{IntVec, LatticeHom};

/// Outcome of a morphism check. `cones[i] = (σ, σ')` records the target
/// cone chosen for the source cone `σ`, or `None` if there is none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCertificate {
    pub ok: bool,
    pub cones: Vec<(usize, Option<usize>)>,
    pub fan: Option<FanHomCertificate>,
}

fn check_dims(phi: &LatticeHom, source: &Fan, target: &Fan) -> Result<()> {
    if phi.source_dim() != source.ambient_dim() || phi.target_dim() != target.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: source.ambient_dim(),
            found: phi.source_dim(),
        });
    }
    Ok(())
}

/// Target cones to try for `σ`. For groups only the smallest cone containing
/// `φ(σ)` counts: any larger cone has a smaller group and would make the
/// condition vacuous. Monoids may use any cone containing `φ(σ)`. When no
/// cone contains `φ(σ)` every cone is tried, so the certificate still says
/// which group conditions hold.
fn candidates(phi: &LatticeHom, source: &Fan, target: &Fan, sigma: usize, smallest_only: bool) -> Result<Vec<usize>> {
    let img: Vec<IntVec> = source
        .cone(sigma)
        .rays()
        .iter()
        .map(|r| phi.apply(r))
        .collect::<Result<_>>()?;
    Ok(match target.minimal_cone_containing(&img) {
        Some(first) if smallest_only => vec![first],
        Some(first) => std::iter::once(first)
            .chain((0..target.len()).filter(|&t| t != first && target.is_face(first, t)))
            .collect(),
        None => (0..target.len()).collect(),
    })
}

/// Morphism of fans with groups: every `G_σ` contains some `φ^T(G'_{σ'})`
/// and every maximal cone maps into a cone.
pub fn check_hom_groups(phi: &LatticeHom, x: &FanWithGroups, x2: &FanWithGroups) -> Result<HomCertificate> {
    check_dims(phi, x.fan(), x2.fan())?;
    let mut cones = Vec::with_capacity(x.fan().len());
    for sigma in 0..x.fan().len() {
        let mut found = None;
        for t in candidates(phi, x.fan(), x2.fan(), sigma, true)? {
            if phi.apply_transpose(x2.group(t))?.is_subset_of(x.group(sigma)) {
                found = Some(t);
                break;
            }
        }
        cones.push((sigma, found));
    }
    let fan = fan_hom_check(phi, x.fan(), x2.fan())?;
    Ok(HomCertificate {
        ok: fan.ok && cones.iter().all(|(_, t)| t.is_some()),
        cones,
        fan: Some(fan),
    })
}

/// Morphism of fans with monoids: every `Γ_σ` contains some `φ^T(Γ'_{σ'})`.
pub fn check_hom_monoids(phi: &LatticeHom, y: &FanWithMonoids, y2: &FanWithMonoids) -> Result<HomCertificate> {
    check_dims(phi, y.fan(), y2.fan())?;
    let mut cones = Vec::with_capacity(y.fan().len());
    for sigma in 0..y.fan().len() {
        let gamma = y.monoid(sigma);
        let mut found = None;
        'targets: for t in candidates(phi, y.fan(), y2.fan(), sigma, false)? {
            for g in y2.monoid(t).generators() {
                if !gamma.contains(&phi.apply_dual(g)?)? {
                    continue 'targets;
                }
            }
            found = Some(t);
            break;
        }
        cones.push((sigma, found));
    }
    Ok(HomCertificate {
        ok: cones.iter().all(|(_, t)| t.is_some()),
        cones,
        fan: None,
    })
}
