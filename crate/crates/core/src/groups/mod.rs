//! Fans carrying a group or a monoid on every cone, the functor from the
//! first kind to the second, and the checks relating them.

mod functor;
mod hom;
mod validate;

use std::fmt;

pub use functor::{extract_groups, functor_f, gamma_member, gamma_oracle};
pub use hom::{check_hom_groups, check_hom_monoids, HomCertificate};
pub use validate::{is_seminormal_fan, seminormalize_fan, validate_groups, validate_monoids};

use crate::cone::Fan;
use crate::error::{Error, Result};
use crate::lattice::{IntVec, Sublattice};
use crate::monoid::{m_group, sum_with_group, AffineMonoid};

/// A fan with a sublattice `G_σ` of the dual lattice on every cone.
#[derive(Clone, Debug)]
pub struct FanWithGroups {
    fan: Fan,
    groups: Vec<Sublattice>,
}

impl FanWithGroups {
    /// `groups[i]` is attached to cone `i` of the fan.
    pub fn new(fan: Fan, groups: Vec<Sublattice>) -> Result<Self> {
        if groups.len() != fan.len() {
            return Err(Error::InvalidGroups(format!(
                "{} groups for {} cones",
                groups.len(),
                fan.len()
            )));
        }
        for g in &groups {
            if g.ambient_dim() != fan.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: fan.ambient_dim(),
                    found: g.ambient_dim(),
                });
            }
        }
        Ok(FanWithGroups { fan, groups })
    }

    /// Groups for some cones; the others get `M ∩ σ^⊥` and the zero cone
    /// gets `M`.
    pub fn with_defaults(fan: Fan, assigned: Vec<(usize, Sublattice)>) -> Result<Self> {
        let d = fan.ambient_dim();
        let m = Sublattice::full(d);
        let mut groups: Vec<Option<Sublattice>> = vec![None; fan.len()];
        for (i, g) in assigned {
            if i >= fan.len() {
                return Err(Error::ConeNotInFan(i.to_string()));
            }
            groups[i] = Some(g);
        }
        groups[0] = Some(m.clone());
        let groups = groups
            .into_iter()
            .enumerate()
            .map(|(i, g)| match g {
                Some(g) => Ok(g),
                None => fan.cone(i).perp_lattice(&m),
            })
            .collect::<Result<_>>()?;
        FanWithGroups::new(fan, groups)
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn rank(&self) -> usize {
        self.fan.ambient_dim()
    }

    pub fn group(&self, i: usize) -> &Sublattice {
        &self.groups[i]
    }

    pub fn groups(&self) -> &[Sublattice] {
        &self.groups
    }
}

/// A fan with an affine monoid `Γ_σ` of the dual lattice on every cone.
#[derive(Clone, Debug)]
pub struct FanWithMonoids {
    fan: Fan,
    monoids: Vec<AffineMonoid>,
}

impl FanWithMonoids {
    pub fn new(fan: Fan, monoids: Vec<AffineMonoid>) -> Result<Self> {
        if monoids.len() != fan.len() {
            return Err(Error::InvalidMonoids(format!(
                "{} monoids for {} cones",
                monoids.len(),
                fan.len()
            )));
        }
        for s in &monoids {
            if s.ambient_dim() != fan.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: fan.ambient_dim(),
                    found: s.ambient_dim(),
                });
            }
        }
        Ok(FanWithMonoids { fan, monoids })
    }

    /// Monoids for some cones. A missing cone `τ` gets `Γ_σ + M(τ, Γ_σ)`
    /// for the first maximal cone `σ ⪰ τ` that has a monoid.
    pub fn from_partial(fan: Fan, assigned: Vec<(usize, AffineMonoid)>) -> Result<Self> {
        let mut monoids: Vec<Option<AffineMonoid>> = vec![None; fan.len()];
        for (i, s) in assigned {
            if i >= fan.len() {
                return Err(Error::ConeNotInFan(i.to_string()));
            }
            monoids[i] = Some(s);
        }
        let mut out = Vec::with_capacity(fan.len());
        for (t, slot) in monoids.iter().enumerate() {
            if let Some(s) = slot {
                out.push(s.clone());
                continue;
            }
            let sigma = fan
                .maximal_cones()
                .iter()
                .copied()
                .find(|&s| fan.is_face(t, s) && monoids[s].is_some())
                .ok_or_else(|| Error::InvalidMonoids(format!("no monoid given for cone {{{}}}", fan.key(t))))?;
            let gamma = monoids[sigma].as_ref().expect("checked above");
            out.push(sum_with_group(gamma, &m_group(gamma, fan.cone(t))?)?);
        }
        FanWithMonoids::new(fan, out)
    }

    /// The fan of faces of `σ` with `σ^∨ = cone(S)`, carrying `S` on `σ`.
    pub fn affine(s: &AffineMonoid) -> Result<Self> {
        let d = s.ambient_dim();
        let dual = s.cone().dual();
        if !dual.is_pointed() {
            return Err(Error::InvalidMonoids(
                "the cone of the monoid is not full-dimensional".into(),
            ));
        }
        let sigma = crate::cone::make_cone(d, dual.rays())?;
        let fan = Fan::from_max_cones(d, &[sigma])?;
        let top = fan.maximal_cones()[0];
        FanWithMonoids::from_partial(fan, vec![(top, s.clone())])
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn rank(&self) -> usize {
        self.fan.ambient_dim()
    }

    pub fn monoid(&self, i: usize) -> &AffineMonoid {
        &self.monoids[i]
    }

    pub fn monoids(&self) -> &[AffineMonoid] {
        &self.monoids
    }
}

/// Which defining condition a failure violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    /// `G_0 != M`.
    G0NotM,
    /// `G_σ ⊄ G_τ ∩ σ^⊥`.
    NotContained,
    /// `G_σ` has smaller rank than `G_τ ∩ σ^⊥`.
    InfiniteIndex,
    /// `Z Γ_σ != M`.
    SpanNotM,
    /// `R_{>=0} Γ_σ != σ^∨`.
    ConeMismatch,
    /// `Γ_τ != Γ_σ + M(τ, Γ_σ)`.
    LocalizationMismatch,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::G0NotM => "g0_not_m",
            Reason::NotContained => "not_contained",
            Reason::InfiniteIndex => "infinite_index",
            Reason::SpanNotM => "span_not_m",
            Reason::ConeMismatch => "cone_mismatch",
            Reason::LocalizationMismatch => "localization_mismatch",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One violated condition at a face pair `τ ⪯ σ` (cone indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub condition: u8,
    pub reason: Reason,
    pub tau: usize,
    pub sigma: usize,
    pub witness: Option<IntVec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
