use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::affine::AffineMonoid;
use super::extract::{extract_generators, irreducible_generators};
use super::frame::Frame;
use super::oracle::{MembershipOracle, Provenance};
use crate::cone::{ContainMode, GenCone, SimplicialCone};
use crate::error::{Error, Result};
use crate::lattice::{kernel, Int, IntMatrix, IntVec, Sublattice};

pub fn make_monoid(gens: &[IntVec], d: usize) -> Result<AffineMonoid> {
    AffineMonoid::new(d, gens)
}

pub fn monoid_member(s: &AffineMonoid, m: &IntVec) -> Result<bool> {
    s.contains(m)
}

pub fn interior_member(s: &AffineMonoid, m: &IntVec) -> Result<bool> {
    s.interior_contains(m)
}

/// `S ∩ F` for a face `F` of the cone of `S`.
pub fn face_restrict(s: &AffineMonoid, face: &GenCone) -> Result<AffineMonoid> {
    if face.ambient_dim() != s.ambient_dim() || !s.cone().is_face(face) {
        return Err(Error::NotAFace);
    }
    let gens: Vec<IntVec> = s
        .generators()
        .iter()
        .filter(|g| face.contains_unchecked(g, ContainMode::Closed))
        .cloned()
        .collect();
    AffineMonoid::new(s.ambient_dim(), &gens)
}

/// The group generated by the generators of `S` lying in `τ^⊥`.
pub fn m_group(s: &AffineMonoid, tau: &SimplicialCone) -> Result<Sublattice> {
    if tau.ambient_dim() != s.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: s.ambient_dim(),
            found: tau.ambient_dim(),
        });
    }
    let gens: Vec<IntVec> = s
        .generators()
        .iter()
        .filter(|g| tau.rays().iter().all(|r| r.dot(g).is_zero()))
        .cloned()
        .collect();
    Sublattice::span(&gens, s.ambient_dim())
}

/// Minimal generating set of `C ∩ L`, sorted.
pub fn hilbert_basis(c: &GenCone, l: &Sublattice) -> Result<Vec<IntVec>> {
    if c.ambient_dim() != l.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: l.ambient_dim(),
            found: c.ambient_dim(),
        });
    }
    let gens = c.generators();
    if !gens.iter().all(|g| l.contains_rationally(g)) {
        return Err(Error::NotInSpan);
    }
    let group = l.intersect_subspace(&gens)?;
    let units = group.intersect_subspace(&c.lineality().basis_vectors())?;
    let frame = Frame::new(group, c.clone(), units)?;
    extract_generators(&MembershipOracle::saturated(Arc::new(frame), Provenance::Saturation))
}

/// `cone(S) ∩ Z S`.
pub fn saturation(s: &AffineMonoid) -> Result<AffineMonoid> {
    let mut gens = hilbert_basis(s.cone(), s.group())?;
    gens.retain(|g| !g.is_zero());
    gens.sort();
    gens.dedup();
    AffineMonoid::with_cone(s.ambient_dim(), gens, s.cone().clone())
}

pub fn is_saturated(s: &AffineMonoid) -> Result<bool> {
    contains_all(s, saturation(s)?.generators())
}

/// The seminormalization `S^+` as an oracle and as a generated monoid.
#[derive(Debug)]
pub struct Seminormalization {
    pub oracle: MembershipOracle,
    pub monoid: AffineMonoid,
}

/// The oracle `m ↦ m ∈ Z(S ∩ F)` for the face `F` with `m ∈ relint F`.
pub fn seminormal_oracle(s: &AffineMonoid) -> Result<MembershipOracle> {
    let frame = s.frame()?;
    let facets = s.cone().facets().to_vec();
    let gens = s.generators().to_vec();
    let d = s.ambient_dim();
    MembershipOracle::from_faces(frame, Provenance::Seminormalization, move |mask| {
        let on_face: Vec<IntVec> = gens
            .iter()
            .filter(|g| {
                facets
                    .iter()
                    .enumerate()
                    .all(|(i, f)| mask & (1 << i) == 0 || f.dot(g).is_zero())
            })
            .cloned()
            .collect();
        Sublattice::span(&on_face, d)
    })
}

pub fn seminormalize(s: &AffineMonoid) -> Result<Seminormalization> {
    let oracle = seminormal_oracle(s)?;
    let monoid = monoid_from_oracle(&oracle)?;
    Ok(Seminormalization { oracle, monoid })
}

/// Generated monoid of a face-lattice oracle, certified against it.
pub fn monoid_from_oracle(oracle: &MembershipOracle) -> Result<AffineMonoid> {
    let gens = extract_generators(oracle)?;
    AffineMonoid::with_cone(oracle.ambient_dim(), gens, oracle.frame().cone().clone())
}

/// The first generator of `S^+` missing from `S`, if any.
pub fn semisaturation_witness(s: &AffineMonoid) -> Result<Option<IntVec>> {
    for g in irreducible_generators(&seminormal_oracle(s)?)? {
        if !s.contains(&g)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

pub fn is_semisaturated(s: &AffineMonoid) -> Result<bool> {
    Ok(semisaturation_witness(s)?.is_none())
}

/// `S + L`.
pub fn sum_with_group(s: &AffineMonoid, l: &Sublattice) -> Result<AffineMonoid> {
    if l.ambient_dim() != s.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: s.ambient_dim(),
            found: l.ambient_dim(),
        });
    }
    let mut gens = s.generators().to_vec();
    let mut cone_gens = s.cone().generators();
    for b in l.basis_vectors() {
        cone_gens.push(-&b);
        cone_gens.push(b.clone());
        gens.push(-&b);
        gens.push(b);
    }
    gens.retain(|g| !g.is_zero());
    gens.sort();
    gens.dedup();
    let cone = GenCone::from_generators(s.ambient_dim(), &cone_gens)?;
    AffineMonoid::with_cone(s.ambient_dim(), gens, cone)
}

fn contains_all(s: &AffineMonoid, gens: &[IntVec]) -> Result<bool> {
    for g in gens {
        if !s.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn monoid_equal(a: &AffineMonoid, b: &AffineMonoid) -> Result<bool> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    Ok(contains_all(a, b.generators())? && contains_all(b, a.generators())?)
}

/// Relations `x` with `Σ x_i g_i = 0` among the canonical generators.
pub fn relation_lattice(s: &AffineMonoid) -> Sublattice {
    relation_lattice_of(s.generators(), s.ambient_dim()).expect("generators have ambient length")
}

/// Relations among `gens` in the given order.
pub fn relation_lattice_of(gens: &[IntVec], d: usize) -> Result<Sublattice> {
    if gens.is_empty() {
        return Ok(Sublattice::zero(0));
    }
    Ok(kernel(&IntMatrix::from_rows(d, gens)?.transpose()))
}

/// Some `s ∈ τ ∩ G` with `g + s ∈ τ`, for `G` of full rank in the span of `τ`.
pub fn cone_translate(tau: &SimplicialCone, g_lat: &Sublattice, g: &IntVec) -> Result<IntVec> {
    g.check_dim(tau.ambient_dim())?;
    let lambda = tau.coefficients(g).ok_or(Error::NotInSpan)?;
    let mut s = IntVec::zeros(tau.ambient_dim());
    for (ray, l) in tau.rays().iter().zip(&lambda) {
        let q = g_lat.rational_coordinates(ray).ok_or(Error::NotInSpan)?;
        let k = q.iter().fold(Int::from(1), |acc, x| acc.lcm(x.denom()));
        if l.is_negative() {
            let steps = (-l / BigRational::from_integer(k.clone())).ceil().to_integer();
            s = &s + &ray.scale(&(steps * &k));
        }
    }
    Ok(s)
}
