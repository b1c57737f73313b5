use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::gencone::{ContainMode, GenCone};
use crate::error::{Error, Result};
use crate::lattice::{IntVec, Sublattice};

/// A cone spanned by linearly independent primitive rays.
///
/// Rays are kept lexicographically sorted, which makes the representation
/// canonical. Cones are ordered by dimension first.
#[derive(Clone)]
pub struct SimplicialCone {
    ambient_dim: usize,
    rays: Vec<IntVec>,
    hull: OnceLock<GenCone>,
}

impl SimplicialCone {
    pub fn new(d: usize, rays: &[IntVec]) -> Result<Self> {
        let mut prim = Vec::with_capacity(rays.len());
        for r in rays {
            r.check_dim(d)?;
            if r.is_zero() {
                return Err(Error::ZeroRay);
            }
            prim.push(r.primitive());
        }
        prim.sort();
        prim.dedup();
        if prim.len() != rays.len() || Sublattice::span(&prim, d)?.rank() != prim.len() {
            return Err(Error::DependentRays);
        }
        Ok(SimplicialCone {
            ambient_dim: d,
            rays: prim,
            hull: OnceLock::new(),
        })
    }

    pub fn zero(d: usize) -> Self {
        SimplicialCone {
            ambient_dim: d,
            rays: Vec::new(),
            hull: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.rays.len() == self.ambient_dim
    }

    /// The same cone as a [`GenCone`].
    pub fn gen_cone(&self) -> &GenCone {
        self.hull
            .get_or_init(|| GenCone::from_generators(self.ambient_dim, &self.rays).expect("rays have ambient length"))
    }

    pub fn contains(&self, v: &IntVec, mode: ContainMode) -> Result<bool> {
        self.gen_cone().contains(v, mode)
    }

    /// Every face, i.e. every subset of the rays, ordered by dimension and then rays.
    pub fn faces(&self) -> Vec<SimplicialCone> {
        let k = self.rays.len();
        let mut out: Vec<SimplicialCone> = (0u32..1 << k)
            .map(|mask| {
                let rays: Vec<IntVec> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.rays[i].clone())
                    .collect();
                SimplicialCone {
                    ambient_dim: self.ambient_dim,
                    rays,
                    hull: OnceLock::new(),
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn is_face_of(&self, sigma: &SimplicialCone) -> bool {
        self.ambient_dim == sigma.ambient_dim && self.rays.iter().all(|r| sigma.rays.contains(r))
    }

    /// Coefficients of `v` in the rays, if `v` is in their rational span.
    pub fn coefficients(&self, v: &IntVec) -> Option<Vec<BigRational>> {
        if v.dim() != self.ambient_dim {
            return None;
        }
        solve_rational(&self.rays, v)
    }

    /// The unique face containing `v` in its relative interior.
    pub fn minimal_face_containing(&self, v: &IntVec) -> Result<SimplicialCone> {
        v.check_dim(self.ambient_dim)?;
        let lambda = self
            .coefficients(v)
            .filter(|l| l.iter().all(|x| !x.is_negative()))
            .ok_or_else(|| Error::NotInCone(v.to_string()))?;
        let rays: Vec<IntVec> = lambda
            .iter()
            .zip(&self.rays)
            .filter(|(x, _)| x.is_positive())
            .map(|(_, r)| r.clone())
            .collect();
        Ok(SimplicialCone {
            ambient_dim: self.ambient_dim,
            rays,
            hull: OnceLock::new(),
        })
    }

    /// `σ^∨ = {m : <m, n> >= 0 for n in σ}`.
    pub fn dual(&self) -> GenCone {
        GenCone::from_inequalities(self.ambient_dim, &self.rays, &[]).expect("dimensions agree")
    }

    /// `τ^* = σ^∨ ∩ τ^⊥` for a face `τ` of `self`.
    pub fn tau_star(&self, tau: &SimplicialCone) -> Result<GenCone> {
        if !tau.is_face_of(self) {
            return Err(Error::NotAFace);
        }
        GenCone::from_inequalities(self.ambient_dim, &self.rays, &tau.rays)
    }

    /// `M ∩ τ^⊥`.
    pub fn perp_lattice(&self, m: &Sublattice) -> Result<Sublattice> {
        let perp = Sublattice::span(&self.rays, self.ambient_dim)?.orthogonal_complement();
        m.intersect_subspace(&perp.basis_vectors())
    }
}

/// Solves `Σ x_i rows_i = v` over the rationals for independent `rows`.
fn solve_rational(rows: &[IntVec], v: &IntVec) -> Option<Vec<BigRational>> {
    let k = rows.len();
    let d = v.dim();
    // augmented d × (k+1) system, columns are the rows
    let mut a: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut line: Vec<BigRational> = rows.iter().map(|r| BigRational::from_integer(r[i].clone())).collect();
            line.push(BigRational::from_integer(v[i].clone()));
            line
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(k);
    for col in 0..k {
        let Some(p) = (pivot_row..d).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let prow = a[pivot_row].clone();
        for (i, line) in a.iter_mut().enumerate() {
            if i == pivot_row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (x, p) in line.iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|line| !line[k].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = a[i][k].clone();
    }
    Some(x)
}

impl PartialEq for SimplicialCone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.rays == other.rays
    }
}

impl Eq for SimplicialCone {}

impl Hash for SimplicialCone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.rays.hash(state);
    }
}

impl PartialOrd for SimplicialCone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimplicialCone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim, self.rays.len(), &self.rays).cmp(&(other.ambient_dim, other.rays.len(), &other.rays))
    }
}

impl fmt::Debug for SimplicialCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{:?}", self.rays)
    }
}
