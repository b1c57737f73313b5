use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{Int, IntMatrix, IntVec};
use super::normal_form::{hnf, snf};
use crate::error::{Error, Result};

/// A subgroup of `Z^d`, stored by its canonical Hermite basis.
///
/// Two sublattices are equal exactly when their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

/// Result of [`Sublattice::index_in`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
    NotContained,
}

impl LatticeIndex {
    pub fn is_finite(&self) -> bool {
        matches!(self, LatticeIndex::Finite(_))
    }
}

impl Sublattice {
    /// Smallest subgroup of `Z^d` containing `vs`.
    pub fn span(vs: &[IntVec], d: usize) -> Result<Self> {
        let m = IntMatrix::from_rows(d, vs)?;
        Ok(Self::from_hnf_rows(d, &m))
    }

    fn from_hnf_rows(d: usize, m: &IntMatrix) -> Self {
        let (h, _) = hnf(m);
        let rows: Vec<IntVec> = h.row_vectors().into_iter().filter(|r| !r.is_zero()).collect();
        Sublattice {
            ambient_dim: d,
            basis: IntMatrix::from_rows(d, &rows).expect("rows have ambient length"),
        }
    }

    pub fn full(d: usize) -> Self {
        Sublattice {
            ambient_dim: d,
            basis: IntMatrix::identity(d),
        }
    }

    pub fn zero(d: usize) -> Self {
        Sublattice {
            ambient_dim: d,
            basis: IntMatrix::zeros(0, d),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<IntVec> {
        self.basis.row_vectors()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_dim && self.basis == IntMatrix::identity(self.ambient_dim)
    }

    fn pivots(&self) -> Vec<usize> {
        (0..self.rank())
            .map(|i| {
                (0..self.ambient_dim)
                    .find(|&j| !self.basis.get(i, j).is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    /// Integer coordinates of `v` in the basis, or `None` if `v` is not in
    /// the lattice.
    pub fn coordinates(&self, v: &IntVec) -> Option<Vec<Int>> {
        if v.dim() != self.ambient_dim {
            return None;
        }
        let mut rest = v.clone().into_entries();
        let mut coords = Vec::with_capacity(self.rank());
        for (i, p) in self.pivots().into_iter().enumerate() {
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let pivot = self.basis.get(i, p);
            let (q, r) = rest[p].div_rem(pivot);
            if !r.is_zero() {
                return None;
            }
            for (j, x) in rest.iter_mut().enumerate().skip(p) {
                *x -= &q * self.basis.get(i, j);
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Rational coordinates of `v` in the basis, or `None` if `v` is not in
    /// the rational span.
    pub fn rational_coordinates(&self, v: &IntVec) -> Option<Vec<BigRational>> {
        if v.dim() != self.ambient_dim {
            return None;
        }
        let mut rest: Vec<BigRational> = v
            .entries()
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut coords = Vec::with_capacity(self.rank());
        for (i, p) in self.pivots().into_iter().enumerate() {
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let q = &rest[p] / BigRational::from_integer(self.basis.get(i, p).clone());
            for (j, x) in rest.iter_mut().enumerate().skip(p) {
                *x -= &q * BigRational::from_integer(self.basis.get(i, j).clone());
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &IntVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_rationally(&self, v: &IntVec) -> bool {
        self.rational_coordinates(v).is_some()
    }

    /// Canonical representative of the coset `v + L`.
    pub fn reduce(&self, v: &IntVec) -> IntVec {
        let mut out = v.clone();
        for (i, p) in self.pivots().into_iter().enumerate() {
            let q = out[p].div_floor(self.basis.get(i, p));
            if !q.is_zero() {
                out = &out - &self.basis.row(i).scale(&q);
            }
        }
        out
    }

    /// Vector from integer coordinates.
    pub fn combine(&self, coords: &[Int]) -> IntVec {
        IntMatrix::vec_mul(&IntVec::new(coords.to_vec()), &self.basis)
    }

    pub fn is_subset_of(&self, other: &Sublattice) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis_vectors().iter().all(|b| other.contains(b))
    }

    /// `QL ∩ Z^d`.
    pub fn saturate(&self) -> Sublattice {
        self.orthogonal_complement().orthogonal_complement()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturate() == *self
    }

    /// Saturated lattice of functionals vanishing on `L`.
    pub fn orthogonal_complement(&self) -> Sublattice {
        kernel(&self.basis)
    }

    /// `L ∩ span_Q(W)`.
    pub fn intersect_subspace(&self, w: &[IntVec]) -> Result<Sublattice> {
        for v in w {
            v.check_dim(self.ambient_dim)?;
        }
        let k = Sublattice::span(w, self.ambient_dim)?.orthogonal_complement();
        if k.rank() == 0 {
            return Ok(self.clone());
        }
        if self.rank() == 0 {
            return Ok(self.clone());
        }
        // c B_L lies in W iff (c B_L) K^T = 0.
        let a = self.basis.mul(&k.basis.transpose());
        let coeffs = kernel(&a.transpose());
        let vs: Vec<IntVec> = coeffs
            .basis_vectors()
            .iter()
            .map(|c| IntMatrix::vec_mul(c, &self.basis))
            .collect();
        Sublattice::span(&vs, self.ambient_dim)
    }

    pub fn intersect(&self, other: &Sublattice) -> Result<Sublattice> {
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let r = self.rank();
        if r == 0 || other.rank() == 0 {
            return Ok(Sublattice::zero(self.ambient_dim));
        }
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors().iter().map(|b| -b));
        let stacked = IntMatrix::from_rows(self.ambient_dim, &rows)?;
        let rel = kernel(&stacked.transpose());
        let vs: Vec<IntVec> = rel
            .basis_vectors()
            .iter()
            .map(|x| self.combine(&x.entries()[..r]))
            .collect();
        Sublattice::span(&vs, self.ambient_dim)
    }

    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Sublattice::span(&vs, self.ambient_dim)
    }

    pub fn scale(&self, k: &Int) -> Sublattice {
        let vs: Vec<IntVec> = self.basis_vectors().iter().map(|b| b.scale(k)).collect();
        Sublattice::span(&vs, self.ambient_dim).expect("same dimension")
    }

    /// Index `[B : A]` where `self = A`.
    pub fn index_in(&self, b: &Sublattice) -> LatticeIndex {
        if !self.is_subset_of(b) {
            return LatticeIndex::NotContained;
        }
        if self.rank() < b.rank() {
            return LatticeIndex::Infinite;
        }
        let rows: Vec<IntVec> = self
            .basis_vectors()
            .iter()
            .map(|v| IntVec::new(b.coordinates(v).expect("contained")))
            .collect();
        let c = IntMatrix::from_rows(b.rank(), &rows).expect("square coordinate matrix");
        LatticeIndex::Finite(c.det().abs())
    }
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice(d={}, {:?})", self.ambient_dim, self.basis)
    }
}

/// Saturated lattice `{x ∈ Z^n : A x = 0}` for an `m × n` matrix `A`.
pub fn kernel(a: &IntMatrix) -> Sublattice {
    let n = a.cols();
    if a.rows() == 0 {
        return Sublattice::full(n);
    }
    // S = U A V; A x = 0 iff the first rank(A) entries of V^-1 x vanish.
    let (s, _, v) = snf(a);
    let rank = (0..s.rows().min(n)).filter(|&i| !s.get(i, i).is_zero()).count();
    let vs: Vec<IntVec> = (rank..n).map(|j| v.column(j)).collect();
    Sublattice::span(&vs, n).expect("columns have length n")
}

/// Combination `Σ a_i v_i` with `Σ a_i v_i·w = gcd(v_i·w)`; returns the combination
/// and that gcd.
pub(crate) fn gcd_combination(vs: &[IntVec], w: &IntVec) -> (IntVec, Int) {
    let d = w.dim();
    let mut acc = IntVec::zeros(d);
    let mut g = Int::zero();
    for v in vs {
        let x = v.dot(w);
        if x.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = x.clone();
            acc = v.clone();
            continue;
        }
        let e = g.extended_gcd(&x);
        acc = &acc.scale(&e.x) + &v.scale(&e.y);
        g = e.gcd;
    }
    if g.is_negative() {
        acc = -&acc;
        g = -g;
    }
    (acc, g)
}
