//! Random instances for property tests and benchmarks.
//!
//! Fans in rank 2 are built from sorted primitive rays; fans in rank 3 are
//! cones over triangulated lattice polygons or the complete simplex fan,
//! moved by a random unimodular map. Partial fans keep a random subset of
//! cones. Groups are chosen cone by cone in increasing dimension, each as a
//! random finite-index sublattice of the intersection of `G_τ ∩ σ^⊥` over
//! the proper faces `τ`, so every instance satisfies the finite-index
//! conditions by construction. Diagonal scalings are skipped once the index
//! in `M ∩ σ^⊥` reaches 4.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cone::Fan;
use crate::groups::FanWithGroups;
use num_traits::ToPrimitive;

use crate::lattice::{Int, IntMatrix, IntVec, LatticeHom, LatticeIndex, Sublattice};
use crate::monoid::AffineMonoid;

const SCALINGS: [i64; 6] = [1, 1, 1, 2, 3, 4];
const SCALE_BUDGET: i64 = 4;

/// A random `n × n` integer matrix of determinant `±1`.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n == 0 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                for c in 0..n {
                    let x = m.get(i, c) + m.get(j, c) * sign;
                    m.set(i, c, x);
                }
            }
            1 => {
                for c in 0..n {
                    let (a, b) = (m.get(i, c).clone(), m.get(j, c).clone());
                    m.set(i, c, b);
                    m.set(j, c, a);
                }
            }
            _ => {
                for c in 0..n {
                    let x = -m.get(i, c);
                    m.set(i, c, x);
                }
            }
        }
    }
    m
}

fn random_primitive<R: Rng + ?Sized>(rng: &mut R, d: usize, bound: i64) -> IntVec {
    loop {
        let v = IntVec::new((0..d).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect());
        if !v.is_zero() {
            return v.primitive();
        }
    }
}

fn angle_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let half = |v: &[i64]| u8::from(!(v[1] > 0 || (v[1] == 0 && v[0] > 0)));
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a[0] * b[1] - a[1] * b[0])))
}

fn pick_cones<R: Rng + ?Sized>(rng: &mut R, top: &[Vec<usize>], extra: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut chosen: Vec<Vec<usize>> = top.iter().filter(|_| rng.gen_bool(0.7)).cloned().collect();
    chosen.extend(extra.iter().filter(|_| rng.gen_bool(0.15)).cloned());
    if chosen.is_empty() {
        chosen.push(top.choose(rng).expect("at least one cone").clone());
    }
    chosen
}

fn fan_2d<R: Rng + ?Sized>(rng: &mut R) -> Fan {
    let count = rng.gen_range(2..=6);
    let mut rays: Vec<Vec<i64>> = Vec::new();
    while rays.len() < count {
        let r = random_primitive(rng, 2, 3).to_i64().expect("small entries");
        if !rays.contains(&r) {
            rays.push(r);
        }
    }
    rays.sort_by(|a, b| angle_cmp(a, b));
    let n = rays.len();
    let top: Vec<Vec<usize>> = (0..n)
        .map(|i| (i, (i + 1) % n))
        .filter(|&(i, j)| i != j && rays[i][0] * rays[j][1] - rays[i][1] * rays[j][0] > 0)
        .map(|(i, j)| vec![i, j])
        .collect();
    let singles: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let cones = if top.is_empty() {
        vec![singles[0].clone()]
    } else {
        pick_cones(rng, &top, &singles)
    };
    let rays = rays.iter().map(|r| IntVec::from_i64(r)).collect();
    Fan::from_ray_indices(2, rays, &cones).expect("consecutive rays form a fan")
}

fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn fan_3d<R: Rng + ?Sized>(rng: &mut R) -> Fan {
    let (rays, top): (Vec<Vec<i64>>, Vec<Vec<usize>>) = if rng.gen_bool(0.3) {
        let rays = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]];
        let top = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        (rays, top)
    } else {
        let hull = loop {
            let n = rng.gen_range(3..=6);
            let pts = (0..n).map(|_| (rng.gen_range(-2..=2), rng.gen_range(-2..=2))).collect();
            let h = convex_hull(pts);
            if h.len() >= 3 {
                break h;
            }
        };
        let rays = hull.iter().map(|&(x, y)| vec![x, y, 1]).collect();
        let top = (1..hull.len() - 1).map(|i| vec![0, i, i + 1]).collect();
        (rays, top)
    };
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for t in &top {
        for skip in 0..3 {
            let f: Vec<usize> = (0..3).filter(|&i| i != skip).map(|i| t[i]).collect();
            if !faces.contains(&f) {
                faces.push(f);
            }
        }
    }
    faces.extend((0..rays.len()).map(|i| vec![i]));
    let cones = pick_cones(rng, &top, &faces);
    let u = random_unimodular(rng, 3, 4);
    let rays = rays.iter().map(|r| u.mul_vec(&IntVec::from_i64(r))).collect();
    Fan::from_ray_indices(3, rays, &cones).expect("cones over a triangulation form a fan")
}

/// A random complete or partial simplicial fan in rank 2 or 3.
pub fn random_fan<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Fan {
    match d {
        2 => fan_2d(rng),
        3 => fan_3d(rng),
        _ => panic!("random fans are available in rank 2 and 3"),
    }
}

/// Random groups on `fan` satisfying the finite-index conditions.
pub fn random_groups<R: Rng + ?Sized>(rng: &mut R, fan: Fan) -> FanWithGroups {
    let d = fan.ambient_dim();
    let mut groups: Vec<Sublattice> = Vec::with_capacity(fan.len());
    for sigma in 0..fan.len() {
        if sigma == 0 {
            groups.push(Sublattice::full(d));
            continue;
        }
        let perp = Sublattice::span(fan.cone(sigma).rays(), d)
            .expect("rays have ambient length")
            .orthogonal_complement()
            .basis_vectors();
        let saturated = Sublattice::full(d).intersect_subspace(&perp).expect("same dimension");
        let mut t = saturated.clone();
        for tau in fan.faces_of(sigma) {
            if tau != sigma {
                let g = groups[tau].intersect_subspace(&perp).expect("same dimension");
                t = t.intersect(&g).expect("same dimension");
            }
        }
        let r = t.rank();
        let u = random_unimodular(rng, r, 3);
        // keep the total index small so that the monoids stay tractable
        let index = match t.index_in(&saturated) {
            LatticeIndex::Finite(i) => i.to_i64().unwrap_or(i64::MAX),
            _ => unreachable!("faces keep full rank in σ^⊥"),
        };
        let mut budget = (SCALE_BUDGET / index).max(1);
        let rows: Vec<IntVec> = (0..r)
            .map(|i| {
                let mut k = *SCALINGS.choose(rng).expect("nonempty");
                if k > budget {
                    k = 1;
                }
                budget /= k;
                IntMatrix::vec_mul(&u.row(i), t.basis()).scale(&Int::from(k))
            })
            .collect();
        groups.push(Sublattice::span(&rows, d).expect("same dimension"));
    }
    FanWithGroups::new(fan, groups).expect("one group per cone")
}

pub fn random_fan_with_groups<R: Rng + ?Sized>(rng: &mut R, d: usize) -> FanWithGroups {
    let fan = random_fan(rng, d);
    random_groups(rng, fan)
}

/// A monoid with up to `max_gens` generators with entries in `[-bound, bound]`.
pub fn random_monoid<R: Rng + ?Sized>(rng: &mut R, d: usize, max_gens: usize, bound: i64) -> AffineMonoid {
    let count = rng.gen_range(1..=max_gens);
    let gens: Vec<IntVec> = (0..count)
        .map(|_| IntVec::new((0..d).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect()))
        .collect();
    AffineMonoid::new(d, &gens).expect("generators have length d")
}

/// A random homomorphism `Z^source → Z^target`.
pub fn random_hom<R: Rng + ?Sized>(rng: &mut R, source: usize, target: usize, bound: i64) -> LatticeHom {
    let rows: Vec<IntVec> = (0..target)
        .map(|_| IntVec::new((0..source).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect()))
        .collect();
    LatticeHom::new(IntMatrix::from_rows(source, &rows).expect("rows have length source"))
}
