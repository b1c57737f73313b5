use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::lattice::{gcd_combination, kernel, Int, IntMatrix, IntVec, Sublattice};

/// Whether a point may lie on the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContainMode {
    Closed,
    RelativeInterior,
}

/// A rational polyhedral cone `Cone(rays) + span(lineality)` in `Q^d`.
///
/// The cone is stored both by generators and by inequalities. Rays are
/// canonical representatives modulo the lineality lattice and sorted, so two
/// cones are equal exactly when their rays and lineality lattices agree.
#[derive(Clone)]
pub struct GenCone {
    ambient_dim: usize,
    rays: Vec<IntVec>,
    lineality: Sublattice,
    /// Primitive functionals `f` in the linear span with `f(x) >= 0` on the cone.
    facets: Vec<IntVec>,
    /// Basis of the functionals vanishing on the linear span.
    equations: Vec<IntVec>,
}

impl GenCone {
    pub fn zero(d: usize) -> Self {
        GenCone {
            ambient_dim: d,
            rays: Vec::new(),
            lineality: Sublattice::zero(d),
            facets: Vec::new(),
            equations: Sublattice::full(d).basis_vectors(),
        }
    }

    /// Cone generated by `gens` over the nonnegative rationals.
    pub fn from_generators(d: usize, gens: &[IntVec]) -> Result<Self> {
        for g in gens {
            g.check_dim(d)?;
        }
        let nonzero: Vec<IntVec> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let w = Sublattice::span(&nonzero, d)?.saturate();
        let n = w.rank();
        let equations = w.orthogonal_complement().basis_vectors();
        if n == 0 {
            return Ok(GenCone::zero(d));
        }

        let dirs: Vec<IntVec> = nonzero
            .iter()
            .map(|g| IntVec::new(w.coordinates(g).expect("generator lies in its span")).primitive())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        // grow a subset of the directions until its cone contains all of them
        let mut active: Vec<usize> = Vec::new();
        let mut rank_rows: Vec<IntVec> = Vec::new();
        for (i, c) in dirs.iter().enumerate() {
            rank_rows.push(c.clone());
            if Sublattice::span(&rank_rows, n)?.rank() == rank_rows.len() {
                active.push(i);
            } else {
                rank_rows.pop();
            }
        }
        let norms: Vec<Int> = dirs.iter().map(|c| c.entries().iter().map(|x| x.abs()).sum()).collect();
        let local_facets = loop {
            let subset: Vec<IntVec> = active.iter().map(|&i| dirs[i].clone()).collect();
            let facets = facets_of(&subset, n)?;
            let mut added = false;
            for h in &facets {
                // the most violating direction, normalized by its 1-norm
                let worst = (0..dirs.len())
                    .map(|i| (h.dot(&dirs[i]), i))
                    .filter(|(v, _)| v.is_negative())
                    .min_by(|(a, i), (b, j)| (a * &norms[*j]).cmp(&(b * &norms[*i])));
                if let Some((_, i)) = worst {
                    if !active.contains(&i) {
                        active.push(i);
                        added = true;
                    }
                }
            }
            if !added {
                break facets;
            }
        };

        let basis = w.basis();
        let lin_local = kernel(&IntMatrix::from_rows(n, &local_facets)?);
        let lin_vecs: Vec<IntVec> = lin_local
            .basis_vectors()
            .iter()
            .map(|c| IntMatrix::vec_mul(c, basis))
            .collect();
        let lineality = Sublattice::span(&lin_vecs, d)?;
        let r = lineality.rank();

        let gram_adj = basis.mul(&basis.transpose()).adjugate();
        let lift = gram_adj.mul(basis);
        let mut facets: Vec<IntVec> = local_facets
            .iter()
            .map(|h| IntMatrix::vec_mul(h, &lift).primitive())
            .collect();
        facets.sort();

        let mut rays = BTreeSet::new();
        for c in &dirs {
            let zero: Vec<IntVec> = local_facets.iter().filter(|h| h.dot(c).is_zero()).cloned().collect();
            if zero.len() == local_facets.len() {
                continue;
            }
            let face_rank = Sublattice::span(&zero, n)?.rank();
            if face_rank + r + 1 == n {
                let g = IntMatrix::vec_mul(c, basis);
                rays.insert(primitive_mod_lineality(&g, &lineality));
            }
        }

        Ok(GenCone {
            ambient_dim: d,
            rays: rays.into_iter().collect(),
            lineality,
            facets,
            equations,
        })
    }

    /// `{x : f(x) >= 0 for f in ineqs, e(x) = 0 for e in eqs}`.
    pub fn from_inequalities(d: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> Result<Self> {
        let mut gens = ineqs.to_vec();
        for e in eqs {
            gens.push(e.clone());
            gens.push(-e);
        }
        Ok(GenCone::from_generators(d, &gens)?.dual())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &Sublattice {
        &self.lineality
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.rank() == 0
    }

    /// Rays together with plus and minus a lineality basis.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut out = self.rays.clone();
        for b in self.lineality.basis_vectors() {
            out.push(-&b);
            out.push(b);
        }
        out
    }

    /// The dual cone `{m : <m, x> >= 0 for x in self}`.
    pub fn dual(&self) -> GenCone {
        let mut gens = self.facets.clone();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(-e);
        }
        GenCone::from_generators(self.ambient_dim, &gens).expect("dimensions agree")
    }

    pub fn contains(&self, v: &IntVec, mode: ContainMode) -> Result<bool> {
        v.check_dim(self.ambient_dim)?;
        Ok(self.contains_unchecked(v, mode))
    }

    pub(crate) fn contains_unchecked(&self, v: &IntVec, mode: ContainMode) -> bool {
        if self.equations.iter().any(|e| !e.dot(v).is_zero()) {
            return false;
        }
        match mode {
            ContainMode::Closed => self.facets.iter().all(|f| !f.dot(v).is_negative()),
            ContainMode::RelativeInterior => self.facets.iter().all(|f| f.dot(v).is_positive()),
        }
    }

    pub fn contains_cone(&self, other: &GenCone) -> bool {
        other.ambient_dim == self.ambient_dim
            && other
                .generators()
                .iter()
                .all(|g| self.contains_unchecked(g, ContainMode::Closed))
    }

    /// Indices of the facets vanishing at `v`.
    pub fn zero_facets(&self, v: &IntVec) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| self.facets[i].dot(v).is_zero())
            .collect()
    }

    /// The face cut out by the facets with the given indices.
    pub fn face(&self, facet_ids: &[usize]) -> GenCone {
        let mut eqs = self.equations.clone();
        eqs.extend(facet_ids.iter().map(|&i| self.facets[i].clone()));
        GenCone::from_inequalities(self.ambient_dim, &self.facets, &eqs).expect("dimensions agree")
    }

    /// Smallest face of `self` containing `v`, assuming `v` lies in the cone.
    pub fn minimal_face(&self, v: &IntVec) -> GenCone {
        self.face(&self.zero_facets(v))
    }

    /// `self ∩ W^⊥` for the functionals in `w`.
    pub fn intersect_perp(&self, w: &[IntVec]) -> Result<GenCone> {
        let mut eqs = self.equations.clone();
        eqs.extend(w.iter().cloned());
        GenCone::from_inequalities(self.ambient_dim, &self.facets, &eqs)
    }

    pub fn is_face(&self, f: &GenCone) -> bool {
        if !self.contains_cone(f) {
            return false;
        }
        let gens = f.generators();
        let ids: Vec<usize> = (0..self.facets.len())
            .filter(|&i| gens.iter().all(|g| self.facets[i].dot(g).is_zero()))
            .collect();
        self.face(&ids) == *f
    }
}

impl PartialEq for GenCone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.rays == other.rays && self.lineality == other.lineality
    }
}

impl Eq for GenCone {}

impl fmt::Debug for GenCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GenCone(rays={:?}, lineality={:?})",
            self.rays,
            self.lineality.basis_vectors()
        )
    }
}

/// Canonical primitive generator of the ray `Q_{>0} g + L` modulo `L`.
pub(crate) fn primitive_mod_lineality(g: &IntVec, lin: &Sublattice) -> IntVec {
    if lin.rank() == 0 {
        return g.primitive();
    }
    let p = lin
        .orthogonal_complement()
        .basis_vectors()
        .into_iter()
        .find(|p| !p.dot(g).is_zero())
        .expect("g is not in the lineality space");
    let mut vs = lin.basis_vectors();
    vs.push(g.clone());
    let k = Sublattice::span(&vs, g.dim()).expect("same dimension").saturate();
    let (mut x, _) = gcd_combination(&k.basis_vectors(), &p);
    if p.dot(g).is_negative() {
        x = -&x;
    }
    lin.reduce(&x)
}

/// Facet normals of the cone spanned by `dirs`, which span `Z^n`.
fn facets_of(dirs: &[IntVec], n: usize) -> Result<Vec<IntVec>> {
    let mut found = BTreeSet::new();
    for subset in combinations(dirs.len(), n - 1) {
        let rows: Vec<IntVec> = subset.iter().map(|&i| dirs[i].clone()).collect();
        let k = kernel(&IntMatrix::from_rows(n, &rows)?);
        if k.rank() != 1 {
            continue;
        }
        let h = k.basis().row(0);
        let signs: Vec<Int> = dirs.iter().map(|c| h.dot(c)).collect();
        if signs.iter().all(|s| !s.is_negative()) {
            found.insert(h);
        } else if signs.iter().all(|s| !s.is_positive()) {
            found.insert(-&h);
        }
    }
    // a hyperplane containing every direction is not a facet
    Ok(found
        .into_iter()
        .filter(|h| dirs.iter().any(|c| !h.dot(c).is_zero()))
        .collect())
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
