//! Machine-integer coordinates for enumeration inside a monoid's group.
//!
//! Points of the group `G` are written in a basis adapted to the lineality
//! space of the cone: the first `r` coordinates span `G ∩ lin(C)`, the last
//! `k` coordinates map onto the pointed quotient cone. The lineality part is
//! kept reduced modulo a finite-index unit lattice `U`, so a key names a
//! coset `x + U`.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::cone::GenCone;
use crate::error::{Error, Result};
use crate::lattice::{hnf, snf, unimodular_inverse, Int, IntMatrix, IntVec, Sublattice};

pub(crate) type Key = SmallVec<[i64; 6]>;

/// Largest box the enumerators will walk.
const BOX_LIMIT: u128 = 20_000_000;

fn to_i64(x: &Int) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (x, y)| {
        x.checked_mul(*y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow)
    })
}

pub(crate) struct Frame {
    group: Sublattice,
    cone: GenCone,
    units: Sublattice,
    n: usize,
    r: usize,
    to_key: IntMatrix,
    from_key: IntMatrix,
    unit_hnf: Vec<Vec<i64>>,
    facets: Vec<Key>,
    rays: Vec<Key>,
    grading: Key,
}

impl Frame {
    /// `cone` must span the same rational space as `group`, and `units` must
    /// be a finite-index sublattice of `group ∩ lin(cone)`.
    pub fn new(group: Sublattice, cone: GenCone, units: Sublattice) -> Result<Frame> {
        let n = group.rank();
        let basis = group.basis().clone();
        let lin_amb = group.intersect_subspace(&cone.lineality().basis_vectors())?;
        let r = lin_amb.rank();
        let lin_coords: Vec<IntVec> = lin_amb
            .basis_vectors()
            .iter()
            .map(|b| IntVec::new(group.coordinates(b).expect("lineality lies in the group")))
            .collect();
        let to_key = if r == 0 {
            IntMatrix::identity(n)
        } else {
            snf(&IntMatrix::from_rows(n, &lin_coords)?).2
        };
        let from_key = unimodular_inverse(&to_key);

        let unit_rows: Vec<IntVec> = units
            .basis_vectors()
            .iter()
            .map(|u| {
                let c = IntVec::new(group.coordinates(u).expect("units lie in the group"));
                let y = IntMatrix::vec_mul(&c, &to_key);
                debug_assert!(y.entries()[r..].iter().all(Zero::is_zero));
                IntVec::new(y.entries()[..r].to_vec())
            })
            .collect();
        let (h, _) = hnf(&IntMatrix::from_rows(r, &unit_rows)?);
        let mut unit_hnf = Vec::with_capacity(r);
        for i in 0..r {
            let row: Vec<i64> = (0..r).map(|j| to_i64(h.get(i, j))).collect::<Result<_>>()?;
            if row[i] == 0 {
                return Err(Error::InvalidMonoids(
                    "unit lattice does not have full rank in the lineality space".into(),
                ));
            }
            unit_hnf.push(row);
        }

        // f(x) = y · (from_key · B · f^T) for x = y from_key B
        let lift = from_key.mul(&basis);
        let mut facets = Vec::with_capacity(cone.facets().len());
        for f in cone.facets() {
            let a = lift.mul_vec(f);
            let p = IntVec::new(a.entries()[r..].to_vec()).primitive();
            facets.push(p.entries().iter().map(to_i64).collect::<Result<Key>>()?);
        }
        let mut rays = Vec::with_capacity(cone.rays().len());
        for ray in cone.rays() {
            let q = group
                .rational_coordinates(ray)
                .expect("rays lie in the span of the group");
            let den = q
                .iter()
                .fold(Int::from(1), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            let c = IntVec::new(q.iter().map(|x| (x * &den).to_integer()).collect());
            let y = IntMatrix::vec_mul(&c, &to_key);
            let p = IntVec::new(y.entries()[r..].to_vec()).primitive();
            rays.push(p.entries().iter().map(to_i64).collect::<Result<Key>>()?);
        }
        let k = n - r;
        let mut grading: Key = SmallVec::from_elem(0, k);
        for f in &facets {
            for (g, x) in grading.iter_mut().zip(f) {
                *g = g.checked_add(*x).ok_or(Error::Overflow)?;
            }
        }

        Ok(Frame {
            group,
            cone,
            units,
            n,
            r,
            to_key,
            from_key,
            unit_hnf,
            facets,
            rays,
            grading,
        })
    }

    pub fn group(&self) -> &Sublattice {
        &self.group
    }

    pub fn cone(&self) -> &GenCone {
        &self.cone
    }

    pub fn units(&self) -> &Sublattice {
        &self.units
    }

    pub fn ambient_dim(&self) -> usize {
        self.group.ambient_dim()
    }

    /// Rank of the pointed quotient.
    pub fn pointed_rank(&self) -> usize {
        self.n - self.r
    }

    pub fn rays(&self) -> &[Key] {
        &self.rays
    }

    pub fn facets(&self) -> &[Key] {
        &self.facets
    }

    pub fn pointed<'a>(&self, key: &'a [i64]) -> &'a [i64] {
        &key[self.r..]
    }

    pub fn is_zero(&self, key: &[i64]) -> bool {
        key.iter().all(|&x| x == 0)
    }

    pub fn degree(&self, key: &[i64]) -> Result<i64> {
        dot(&self.grading, self.pointed(key))
    }

    pub fn pointed_degree(&self, p: &[i64]) -> Result<i64> {
        dot(&self.grading, p)
    }

    /// Bitmask of the facets vanishing at `key`, or `None` outside the cone.
    pub fn zero_mask(&self, key: &[i64]) -> Result<Option<u64>> {
        let p = self.pointed(key);
        let mut mask = 0u64;
        for (i, f) in self.facets.iter().enumerate() {
            let v = dot(f, p)?;
            if v < 0 {
                return Ok(None);
            }
            if v == 0 {
                mask |= 1 << i;
            }
        }
        Ok(Some(mask))
    }

    pub fn in_cone(&self, key: &[i64]) -> Result<bool> {
        let p = self.pointed(key);
        for f in &self.facets {
            if dot(f, p)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn reduce(&self, key: &mut [i64]) -> Result<()> {
        for i in 0..self.r {
            let row = &self.unit_hnf[i];
            let q = key[i].div_euclid(row[i]);
            if q != 0 {
                for j in i..self.r {
                    key[j] = row[j]
                        .checked_mul(q)
                        .and_then(|t| key[j].checked_sub(t))
                        .ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(())
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Result<Key> {
        let mut out: Key = a
            .iter()
            .zip(b)
            .map(|(x, y)| x.checked_sub(*y).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        self.reduce(&mut out)?;
        Ok(out)
    }

    /// Key of `x`, or `None` if `x` is not in the group.
    pub fn key_of(&self, x: &IntVec) -> Result<Option<Key>> {
        x.check_dim(self.ambient_dim())?;
        let Some(c) = self.group.coordinates(x) else {
            return Ok(None);
        };
        let y = IntMatrix::vec_mul(&IntVec::new(c), &self.to_key);
        let mut key: Key = y.entries().iter().map(to_i64).collect::<Result<_>>()?;
        self.reduce(&mut key)?;
        Ok(Some(key))
    }

    /// A point of the coset named by `key`, reduced modulo the units.
    pub fn lift(&self, key: &[i64]) -> IntVec {
        let y = IntVec::new(key.iter().map(|&x| Int::from(x)).collect());
        let c = IntMatrix::vec_mul(&y, &self.from_key);
        self.units.reduce(&IntMatrix::vec_mul(&c, self.group.basis()))
    }

    /// Lattice of keys of a sublattice `L` with `U ⊆ L ⊆ G`.
    pub fn key_lattice(&self, l: &Sublattice) -> Result<KeyLattice> {
        let rows: Vec<IntVec> = l
            .basis_vectors()
            .iter()
            .map(|b| {
                let c = self
                    .group
                    .coordinates(b)
                    .ok_or_else(|| Error::InvalidMonoids(format!("{b} is not in the group")))?;
                Ok(IntMatrix::vec_mul(&IntVec::new(c), &self.to_key))
            })
            .collect::<Result<_>>()?;
        let (h, _) = hnf(&IntMatrix::from_rows(self.n, &rows)?);
        let mut out = Vec::new();
        for i in 0..h.rows() {
            let row: Key = (0..self.n).map(|j| to_i64(h.get(i, j))).collect::<Result<_>>()?;
            if row.iter().any(|&x| x != 0) {
                out.push(row);
            }
        }
        Ok(KeyLattice { rows: out })
    }

    /// Every representative of `Z^r / U`.
    pub fn torsion_reps(&self) -> Vec<Key> {
        let mut out = vec![Key::new()];
        for i in 0..self.r {
            let m = self.unit_hnf[i][i];
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..m).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        out
    }

    pub fn join(&self, torsion: &[i64], pointed: &[i64]) -> Key {
        torsion.iter().chain(pointed).copied().collect()
    }

    /// All keys whose pointed part lies in the box `[lo, hi]`, is in the
    /// cone and passes `keep`.
    pub fn keys_in_box(
        &self,
        lo: &[i64],
        hi: &[i64],
        mut keep: impl FnMut(&[i64]) -> Result<bool>,
    ) -> Result<Vec<Key>> {
        let k = self.pointed_rank();
        let mut size: u128 = self.torsion_reps().len() as u128;
        for i in 0..k {
            if hi[i] < lo[i] {
                return Ok(Vec::new());
            }
            size = size.saturating_mul((hi[i] - lo[i] + 1) as u128);
        }
        if size > BOX_LIMIT {
            return Err(Error::EnumerationLimit(format!(
                "box of {size} points exceeds the limit of {BOX_LIMIT}"
            )));
        }
        let torsion = self.torsion_reps();
        let mut out = Vec::new();
        let mut p: Key = lo.iter().copied().collect();
        'walk: loop {
            let zero: Key = SmallVec::from_elem(0, self.r);
            let probe = self.join(&zero, &p);
            if self.in_cone(&probe)? && keep(&p)? {
                for t in &torsion {
                    out.push(self.join(t, &p));
                }
            }
            for i in 0..k {
                if p[i] < hi[i] {
                    p[i] += 1;
                    continue 'walk;
                }
                p[i] = lo[i];
            }
            break;
        }
        Ok(out)
    }

    fn is_simplicial(&self) -> bool {
        self.rays.len() == self.pointed_rank()
    }

    /// Lattice points `q` of the half-open parallelepiped spanned by the
    /// rays, with flags telling which coefficients of `q` are nonzero.
    /// Requires a simplicial pointed cone.
    fn fundamental_points(&self) -> Result<Vec<(Key, Vec<bool>)>> {
        let k = self.pointed_rank();
        let rows: Vec<IntVec> = self.rays.iter().map(|r| IntVec::from_i64(r)).collect();
        let m = IntMatrix::from_rows(k, &rows)?;
        let det = m.det();
        let (s, _, v) = snf(&m);
        let v_inv = unimodular_inverse(&v);
        let adj = m.adjugate();
        let den = num_traits::Signed::abs(&det);
        let sign = if det < Int::zero() { Int::from(-1) } else { Int::from(1) };

        let mut reps = vec![IntVec::zeros(k)];
        for i in 0..k {
            let d = to_i64(s.get(i, i))?;
            let step = v_inv.row(i);
            reps = reps
                .into_iter()
                .flat_map(|x| (0..d).map(|a| &x + &step.scale(&Int::from(a))).collect::<Vec<_>>())
                .collect();
        }
        let mut out = Vec::with_capacity(reps.len());
        for x in reps {
            let num = IntMatrix::vec_mul(&x, &adj).scale(&sign);
            let floor = IntVec::new(num.entries().iter().map(|e| e.div_floor(&den)).collect());
            let q = &x - &IntMatrix::vec_mul(&floor, &m);
            let flags = num.entries().iter().map(|e| !e.mod_floor(&den).is_zero()).collect();
            out.push((q.entries().iter().map(to_i64).collect::<Result<Key>>()?, flags));
        }
        Ok(out)
    }

    /// Calls `emit` on `q + Σ n_i ρ_i` for every fundamental point `q` and
    /// every `n >= 0` within the caps and degree budget returned by `limits`.
    fn walk_simplicial(&self, mut limits: impl FnMut(&[i64], &[bool]) -> Result<(Vec<i64>, i64)>) -> Result<Vec<Key>> {
        let k = self.pointed_rank();
        let degs: Vec<i64> = self
            .rays
            .iter()
            .map(|r| self.pointed_degree(r))
            .collect::<Result<_>>()?;
        let torsion = self.torsion_reps();
        let mut out: Vec<Key> = Vec::new();
        for (q, flags) in self.fundamental_points()? {
            let (caps, budget) = limits(&q, &flags)?;
            let budget = budget - self.pointed_degree(&q)?;
            if budget < 0 || caps.iter().any(|&c| c < 0) {
                continue;
            }
            let mut n = vec![0i64; k];
            let mut p = q.clone();
            let mut used = 0i64;
            'walk: loop {
                for t in &torsion {
                    out.push(self.join(t, &p));
                }
                if out.len() as u128 > BOX_LIMIT {
                    return Err(Error::EnumerationLimit(format!(
                        "more than {BOX_LIMIT} points to enumerate"
                    )));
                }
                for i in 0..k {
                    if n[i] < caps[i] && used + degs[i] <= budget {
                        n[i] += 1;
                        used += degs[i];
                        for (x, y) in p.iter_mut().zip(&self.rays[i]) {
                            *x = x.checked_add(*y).ok_or(Error::Overflow)?;
                        }
                        continue 'walk;
                    }
                    used -= n[i] * degs[i];
                    for (x, y) in p.iter_mut().zip(&self.rays[i]) {
                        *x = y
                            .checked_mul(n[i])
                            .and_then(|t| x.checked_sub(t))
                            .ok_or(Error::Overflow)?;
                    }
                    n[i] = 0;
                }
                break;
            }
        }
        Ok(out)
    }

    /// Keys `Σ λ_i ρ_i` with `0 <= λ_i <= c_i`, for a simplicial pointed cone.
    pub fn parallelepiped(&self, c: &[i64]) -> Result<Vec<Key>> {
        self.walk_simplicial(|_, flags| {
            let caps = c.iter().zip(flags).map(|(&ci, &f)| ci - i64::from(f)).collect();
            Ok((caps, i64::MAX))
        })
    }

    /// All keys in the cone of degree at most `bound`.
    pub fn keys_up_to_degree(&self, bound: i64) -> Result<Vec<Key>> {
        if self.is_simplicial() {
            let caps = vec![i64::MAX; self.pointed_rank()];
            return self.walk_simplicial(|_, _| Ok((caps.clone(), bound)));
        }
        let (lo, hi) = self.degree_box(bound)?;
        self.keys_in_box(&lo, &hi, |p| Ok(self.pointed_degree(p)? <= bound))
    }

    /// Coordinate box of the pointed polytope `{p in cone : deg p <= d}`.
    pub fn degree_box(&self, d: i64) -> Result<(Key, Key)> {
        let k = self.pointed_rank();
        let mut lo: Key = SmallVec::from_elem(0, k);
        let mut hi: Key = SmallVec::from_elem(0, k);
        for ray in &self.rays {
            let deg = self.pointed_degree(ray)?;
            for i in 0..k {
                // vertex (d / deg) ray
                let num = ray[i].checked_mul(d).ok_or(Error::Overflow)?;
                lo[i] = lo[i].min(num.div_euclid(deg));
                hi[i] = hi[i].max(-((-num).div_euclid(deg)));
            }
        }
        Ok((lo, hi))
    }
}

/// A sublattice of key space in echelon form.
#[derive(Clone, Debug)]
pub(crate) struct KeyLattice {
    rows: Vec<Key>,
}

impl KeyLattice {
    pub fn contains(&self, key: &[i64]) -> Result<bool> {
        let mut rest: Key = key.iter().copied().collect();
        for row in &self.rows {
            let p = row.iter().position(|&x| x != 0).expect("rows are nonzero");
            if rest[..p].iter().any(|&x| x != 0) {
                return Ok(false);
            }
            if rest[p] % row[p] != 0 {
                return Ok(false);
            }
            let q = rest[p] / row[p];
            for j in p..rest.len() {
                rest[j] = row[j]
                    .checked_mul(q)
                    .and_then(|t| rest[j].checked_sub(t))
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(rest.iter().all(|&x| x == 0))
    }
}
