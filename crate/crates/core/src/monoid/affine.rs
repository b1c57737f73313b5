use std::fmt;
use std::sync::{Arc, OnceLock};

use super::frame::Frame;
use super::oracle::MembershipOracle;
use crate::cone::{ContainMode, GenCone};
use crate::error::Result;
use crate::lattice::{IntVec, Sublattice};

/// A finitely generated submonoid of `Z^d`.
///
/// Generators are kept sorted, without duplicates and without zero, so two
/// monoids built from the same set of generators compare equal. Equality of
/// the monoids themselves is [`super::monoid_equal`].
#[derive(Clone)]
pub struct AffineMonoid {
    ambient_dim: usize,
    generators: Vec<IntVec>,
    group: Sublattice,
    cone: GenCone,
    oracle: OnceLock<Result<Arc<MembershipOracle>>>,
}

impl AffineMonoid {
    pub fn new(d: usize, gens: &[IntVec]) -> Result<Self> {
        let mut generators: Vec<IntVec> = Vec::with_capacity(gens.len());
        for g in gens {
            g.check_dim(d)?;
            if !g.is_zero() {
                generators.push(g.clone());
            }
        }
        generators.sort();
        generators.dedup();
        let cone = GenCone::from_generators(d, &generators)?;
        Self::with_cone(d, generators, cone)
    }

    /// `generators` must be sorted, deduplicated and nonzero, and `cone`
    /// must be the cone they generate.
    pub(crate) fn with_cone(d: usize, generators: Vec<IntVec>, cone: GenCone) -> Result<Self> {
        let group = Sublattice::span(&generators, d)?;
        Ok(AffineMonoid {
            ambient_dim: d,
            generators,
            group,
            cone,
            oracle: OnceLock::new(),
        })
    }

    pub fn trivial(d: usize) -> Self {
        AffineMonoid::new(d, &[]).expect("no generators")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.generators
    }

    /// `Z S`.
    pub fn group(&self) -> &Sublattice {
        &self.group
    }

    /// `R_{>=0} S`.
    pub fn cone(&self) -> &GenCone {
        &self.cone
    }

    /// The group of units `S ∩ -S`, spanned by the generators in the
    /// lineality space of the cone.
    pub fn units(&self) -> Sublattice {
        let lin = self.cone.lineality();
        let gs: Vec<IntVec> = self
            .generators
            .iter()
            .filter(|g| lin.contains_rationally(g))
            .cloned()
            .collect();
        Sublattice::span(&gs, self.ambient_dim).expect("same dimension")
    }

    pub(crate) fn oracle(&self) -> Result<Arc<MembershipOracle>> {
        self.oracle
            .get_or_init(|| {
                let frame = Frame::new(self.group.clone(), self.cone.clone(), self.units())?;
                Ok(Arc::new(MembershipOracle::generated(
                    Arc::new(frame),
                    &self.generators,
                )?))
            })
            .clone()
    }

    pub(crate) fn frame(&self) -> Result<Arc<Frame>> {
        Ok(self.oracle()?.frame().clone())
    }

    pub fn contains(&self, m: &IntVec) -> Result<bool> {
        m.check_dim(self.ambient_dim)?;
        if !self.cone.contains_unchecked(m, ContainMode::Closed) {
            return Ok(false);
        }
        self.oracle()?.contains(m)
    }

    /// Membership in `Int(S) = S ∩ relint(cone S)`.
    pub fn interior_contains(&self, m: &IntVec) -> Result<bool> {
        m.check_dim(self.ambient_dim)?;
        Ok(self.cone.contains_unchecked(m, ContainMode::RelativeInterior) && self.contains(m)?)
    }

    pub fn is_pointed(&self) -> bool {
        self.cone.is_pointed()
    }
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.generators == other.generators
    }
}

impl Eq for AffineMonoid {}

impl fmt::Debug for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monoid{:?}", self.generators)
    }
}
