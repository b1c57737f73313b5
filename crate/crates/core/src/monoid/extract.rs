//! Finite generating sets of monoids given by membership oracles.
//!
//! The oracles handled here have the form `⨆_F L_F ∩ relint F` over the
//! faces `F` of a cone, with `L_F` growing with `F`. For each ray `ρ_i` let
//! `c_i` be the least multiple of the ray with a member above it. If an
//! element `x ∈ relint F` is written as a positive combination `Σ λ_i ρ_i`
//! of independent rays of `F` and some `λ_i > c_i`, then subtracting that
//! member leaves a positive combination of the same rays, which is again in
//! `relint F` and in `L_F`. So irreducible elements satisfy `λ_i <= c_i`,
//! which bounds them to a finite region.

use std::collections::HashSet;

use super::frame::Key;
use super::oracle::MembershipOracle;
use crate::error::{Error, Result};
use crate::lattice::IntVec;

const MULTIPLE_LIMIT: i64 = 100_000;

/// Generators of the oracle's monoid, certified against the oracle on the
/// box of degree at most three times the largest generator degree.
pub(crate) fn extract_generators(oracle: &MembershipOracle) -> Result<Vec<IntVec>> {
    let irreducible = irreducible_keys(oracle)?;
    certify(oracle, &irreducible)?;
    Ok(lift_all(oracle, &irreducible))
}

/// The same generators without the certification pass.
pub(crate) fn irreducible_generators(oracle: &MembershipOracle) -> Result<Vec<IntVec>> {
    Ok(lift_all(oracle, &irreducible_keys(oracle)?))
}

fn lift_all(oracle: &MembershipOracle, irreducible: &[Key]) -> Vec<IntVec> {
    let frame = oracle.frame();
    let mut gens: Vec<IntVec> = irreducible.iter().map(|k| frame.lift(k)).collect();
    for b in frame.units().basis_vectors() {
        gens.push(-&b);
        gens.push(b);
    }
    gens.sort();
    gens.dedup();
    gens
}

fn ray_multiples(oracle: &MembershipOracle) -> Result<Vec<i64>> {
    let frame = oracle.frame();
    let torsion = frame.torsion_reps();
    let mut out = Vec::with_capacity(frame.rays().len());
    for ray in frame.rays() {
        let mut found = None;
        'search: for t in 1..=MULTIPLE_LIMIT {
            let p: Key = ray.iter().map(|&x| x * t).collect();
            for tor in &torsion {
                if oracle.contains_key(&frame.join(tor, &p))? {
                    found = Some(t);
                    break 'search;
                }
            }
        }
        match found {
            Some(t) => out.push(t),
            None => {
                return Err(Error::EnumerationLimit(format!(
                    "no member on a ray within {MULTIPLE_LIMIT} steps"
                )))
            }
        }
    }
    Ok(out)
}

fn irreducible_keys(oracle: &MembershipOracle) -> Result<Vec<Key>> {
    let frame = oracle.frame();
    let k = frame.pointed_rank();
    if k == 0 {
        return Ok(Vec::new());
    }
    let c = ray_multiples(oracle)?;
    let rays = frame.rays();
    let candidates = if rays.len() == k {
        frame.parallelepiped(&c)?
    } else {
        let mut weights: Vec<i64> = rays
            .iter()
            .zip(&c)
            .map(|(r, &ci)| Ok(frame.pointed_degree(r)? * ci))
            .collect::<Result<_>>()?;
        weights.sort_unstable_by(|a, b| b.cmp(a));
        let bound: i64 = weights[..k].iter().sum();
        frame.keys_up_to_degree(bound)?
    };

    let mut members = Vec::new();
    for key in candidates {
        if !frame.is_zero(&key) && oracle.contains_key(&key)? {
            members.push((frame.degree(&key)?, key));
        }
    }
    members.sort();

    let mut irreducible: Vec<(i64, Key)> = Vec::new();
    for (deg, x) in members {
        let mut reducible = false;
        for (hdeg, h) in &irreducible {
            if *hdeg < deg && oracle.contains_key(&frame.sub(&x, h)?)? {
                reducible = true;
                break;
            }
        }
        if !reducible {
            irreducible.push((deg, x));
        }
    }
    Ok(irreducible.into_iter().map(|(_, k)| k).collect())
}

/// Checks that the monoid generated by `gens` (together with the units)
/// agrees with the oracle on every point of degree at most `3 max deg`.
fn certify(oracle: &MembershipOracle, gens: &[Key]) -> Result<()> {
    let frame = oracle.frame();
    if frame.pointed_rank() == 0 {
        return Ok(());
    }
    let mut max_deg = 0;
    for g in gens {
        max_deg = max_deg.max(frame.degree(g)?);
    }
    let bound = 3 * max_deg.max(1);
    let mut points: Vec<(i64, Key)> = frame
        .keys_up_to_degree(bound)?
        .into_iter()
        .map(|k| Ok((frame.degree(&k)?, k)))
        .collect::<Result<_>>()?;
    // generators have positive degree, so points of equal degree are independent
    points.sort_unstable_by_key(|(deg, _)| *deg);
    let gen_degs: Vec<i64> = gens.iter().map(|g| frame.degree(g)).collect::<Result<_>>()?;

    let mut reachable: HashSet<Key> = HashSet::new();
    for (deg, p) in points {
        let generated = frame.is_zero(&p)
            || gens.iter().zip(&gen_degs).try_fold(false, |found, (g, &gd)| {
                if found || gd > deg {
                    return Ok::<bool, Error>(found);
                }
                Ok(reachable.contains(&frame.sub(&p, g)?))
            })?;
        if generated != oracle.contains_key(&p)? {
            return Err(Error::CertificationFailure(format!(
                "generators and oracle disagree at {}",
                frame.lift(&p)
            )));
        }
        if generated {
            reachable.insert(p);
        }
    }
    Ok(())
}
