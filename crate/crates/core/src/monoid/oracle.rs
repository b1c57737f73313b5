use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use super::frame::{Frame, Key, KeyLattice};
use crate::error::{Error, Result};
use crate::lattice::{IntVec, Sublattice};

/// Where an oracle's monoid came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Generated,
    Saturation,
    Seminormalization,
    FunctorGamma,
    SumWithGroup,
}

type FaceLatticeFn = dyn Fn(u64) -> Result<Sublattice> + Send + Sync;

enum Rule {
    /// Every point of the group in the cone.
    Saturated,
    /// Points in the relative interior of a face `F` belonging to a lattice
    /// `L_F`, where the face is named by the facets vanishing on it.
    Faces {
        lattice_of: Box<FaceLatticeFn>,
        memo: Mutex<HashMap<u64, Arc<KeyLattice>>>,
    },
    /// Nonnegative combinations of generators (keys of the non-unit ones).
    Generated(Vec<Key>),
}

/// A decision procedure for membership in a submonoid of `Z^d`.
///
/// Every oracle is attached to a frame fixing the group, cone and unit
/// lattice of the monoid; all answers are exact.
pub struct MembershipOracle {
    frame: Arc<Frame>,
    provenance: Provenance,
    rule: Rule,
}

impl MembershipOracle {
    pub(crate) fn saturated(frame: Arc<Frame>, provenance: Provenance) -> Self {
        MembershipOracle {
            frame,
            provenance,
            rule: Rule::Saturated,
        }
    }

    /// `lattice_of(mask)` must be monotone: a smaller face gets a smaller
    /// lattice, and the lineality face gets the frame's units.
    pub(crate) fn from_faces(
        frame: Arc<Frame>,
        provenance: Provenance,
        lattice_of: impl Fn(u64) -> Result<Sublattice> + Send + Sync + 'static,
    ) -> Result<Self> {
        if frame.facets().len() > 64 {
            return Err(Error::EnumerationLimit("more than 64 facets".into()));
        }
        Ok(MembershipOracle {
            frame,
            provenance,
            rule: Rule::Faces {
                lattice_of: Box::new(lattice_of),
                memo: Mutex::new(HashMap::new()),
            },
        })
    }

    pub(crate) fn generated(frame: Arc<Frame>, gens: &[IntVec]) -> Result<Self> {
        let mut keys = Vec::with_capacity(gens.len());
        for g in gens {
            let key = frame
                .key_of(g)?
                .ok_or_else(|| Error::InvalidMonoids(format!("{g} is not in the group")))?;
            if !frame.pointed(&key).iter().all(|&x| x == 0) {
                keys.push(key);
            }
        }
        keys.sort();
        keys.dedup();
        Ok(MembershipOracle {
            frame,
            provenance: Provenance::Generated,
            rule: Rule::Generated(keys),
        })
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.ambient_dim()
    }

    pub(crate) fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn contains(&self, x: &IntVec) -> Result<bool> {
        match self.frame.key_of(x)? {
            None => Ok(false),
            Some(key) => self.contains_key(&key),
        }
    }

    pub(crate) fn contains_key(&self, key: &[i64]) -> Result<bool> {
        match &self.rule {
            Rule::Saturated => self.frame.in_cone(key),
            Rule::Faces { lattice_of, memo } => {
                let Some(mask) = self.frame.zero_mask(key)? else {
                    return Ok(false);
                };
                let cached = memo.lock().expect("memo lock").get(&mask).cloned();
                let lattice = match cached {
                    Some(l) => l,
                    None => {
                        let l = Arc::new(self.frame.key_lattice(&lattice_of(mask)?)?);
                        memo.lock().expect("memo lock").insert(mask, l.clone());
                        l
                    }
                };
                lattice.contains(key)
            }
            Rule::Generated(gens) => {
                let mut failed = HashSet::new();
                combination_exists(&self.frame, gens, key, 0, &mut failed)
            }
        }
    }
}

fn combination_exists(
    frame: &Frame,
    gens: &[Key],
    target: &[i64],
    start: usize,
    failed: &mut HashSet<(Key, usize)>,
) -> Result<bool> {
    if frame.pointed(target).iter().all(|&x| x == 0) {
        return Ok(frame.is_zero(target));
    }
    let deg = frame.degree(target)?;
    for (j, g) in gens.iter().enumerate().skip(start) {
        if frame.degree(g)? > deg {
            continue;
        }
        let rest = frame.sub(target, g)?;
        if !frame.in_cone(&rest)? {
            continue;
        }
        let state = (rest, j);
        if failed.contains(&state) {
            continue;
        }
        if combination_exists(frame, gens, &state.0, j, failed)? {
            return Ok(true);
        }
        failed.insert(state);
    }
    Ok(false)
}

impl fmt::Debug for MembershipOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MembershipOracle")
            .field("provenance", &self.provenance)
            .field("group", self.frame.group())
            .finish_non_exhaustive()
    }
}
