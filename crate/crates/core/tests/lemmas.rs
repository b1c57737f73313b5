use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semitoric::cone::{make_cone, ContainMode, GenCone};
use semitoric::lattice::{Int, IntVec, Sublattice};
use semitoric::monoid::{
    cone_translate, hilbert_basis, interior_member, is_saturated, is_semisaturated, monoid_equal, monoid_member,
    saturation, seminormalize, AffineMonoid,
};
use semitoric::sample::{random_monoid, random_unimodular};

fn monoid(seed: u64) -> AffineMonoid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if rng.gen_bool(0.6) {
        random_monoid(&mut rng, 2, 4, 3)
    } else {
        random_monoid(&mut rng, 3, 4, 2)
    }
}

fn combination(rng: &mut ChaCha8Rng, s: &AffineMonoid, min: i64) -> IntVec {
    let d = s.ambient_dim();
    s.generators().iter().fold(IntVec::zeros(d), |acc, g| {
        &acc + &g.scale(&Int::from(rng.gen_range(min..=min + 2)))
    })
}

fn box_points(d: usize, r: i64) -> Vec<IntVec> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| (-r..=r).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out.into_iter().map(|p| IntVec::from_i64(&p)).collect()
}

fn faces(c: &GenCone) -> Vec<GenCone> {
    let n = c.facets().len();
    let mut out: Vec<GenCone> = Vec::new();
    for mask in 0u32..(1 << n) {
        let ids: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let f = c.face(&ids);
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn interior_absorbs(seed in any::<u64>()) {
        let s = monoid(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let a = combination(&mut rng, &s, 0);
        let x = combination(&mut rng, &s, 1);
        prop_assert!(interior_member(&s, &x).unwrap());
        prop_assert!(interior_member(&s, &(&a + &x)).unwrap());
    }

    #[test]
    fn large_multiples_of_interior_points(seed in any::<u64>()) {
        let s = monoid(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let x = combination(&mut rng, &s, 1);
        let k = rng.gen_range(1..=6);
        // m with k m interior: any m in the group along an interior direction
        let m = x.primitive();
        prop_assume!(s.group().contains(&m) && interior_member(&s, &m.scale(&Int::from(k))).unwrap());
        for big in 60..64 {
            prop_assert!(monoid_member(&s, &m.scale(&Int::from(big))).unwrap());
        }
    }

    #[test]
    fn two_and_three_multiples(seed in any::<u64>()) {
        let s = monoid(seed);
        let sn = seminormalize(&s).unwrap();
        let semi = is_semisaturated(&s).unwrap();
        let r = if s.ambient_dim() == 2 { 4 } else { 2 };
        for m in box_points(s.ambient_dim(), r) {
            if s.contains(&m.scale(&Int::from(2))).unwrap() && s.contains(&m.scale(&Int::from(3))).unwrap() {
                prop_assert!(sn.oracle.contains(&m).unwrap());
                if semi {
                    prop_assert!(s.contains(&m).unwrap());
                }
            }
        }
    }

    #[test]
    fn seminormalization_is_sandwiched(seed in any::<u64>()) {
        let s = monoid(seed);
        let sn = seminormalize(&s).unwrap();
        let sat = saturation(&s).unwrap();
        let r = if s.ambient_dim() == 2 { 5 } else { 3 };
        for m in box_points(s.ambient_dim(), r) {
            let a = s.contains(&m).unwrap();
            let b = sn.oracle.contains(&m).unwrap();
            let c = sat.contains(&m).unwrap();
            prop_assert!(!a || b);
            prop_assert!(!b || c);
            prop_assert_eq!(b, sn.monoid.contains(&m).unwrap());
        }
        if is_saturated(&s).unwrap() {
            prop_assert!(is_semisaturated(&s).unwrap());
        }
    }

    #[test]
    fn seminormalization_is_idempotent(seed in any::<u64>()) {
        let s = monoid(seed);
        let once = seminormalize(&s).unwrap().monoid;
        let twice = seminormalize(&once).unwrap().monoid;
        prop_assert!(monoid_equal(&once, &twice).unwrap());
        prop_assert!(is_semisaturated(&once).unwrap());
    }

    #[test]
    fn interior_points_span_face_groups(seed in any::<u64>()) {
        let s = monoid(seed);
        let sn = seminormalize(&s).unwrap().monoid;
        let d = s.ambient_dim();
        for f in faces(sn.cone()) {
            let on_face: Vec<IntVec> = sn
                .generators()
                .iter()
                .filter(|g| f.contains(g, ContainMode::Closed).unwrap())
                .cloned()
                .collect();
            let l = Sublattice::span(&on_face, d).unwrap();
            // a box in lattice coordinates around a deep interior point
            let sum = on_face.iter().fold(IntVec::zeros(d), |acc, g| &acc + g);
            let centre = sum.scale(&Int::from(8));
            let basis = l.basis_vectors();
            let interior: Vec<IntVec> = box_points(basis.len(), 2)
                .into_iter()
                .map(|t| {
                    basis
                        .iter()
                        .zip(t.entries())
                        .fold(centre.clone(), |acc, (b, c)| &acc + &b.scale(c))
                })
                .filter(|m| f.contains(m, ContainMode::RelativeInterior).unwrap())
                .collect();
            prop_assert_eq!(Sublattice::span(&interior, d).unwrap(), l);
        }
    }

    #[test]
    fn translates_reach_the_cone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(2..=3);
        let u = random_unimodular(&mut rng, d, 6);
        let k = rng.gen_range(1..=d);
        let rays: Vec<IntVec> = (0..k).map(|i| u.row(i)).collect();
        let tau = make_cone(d, &rays).unwrap();
        let scaled: Vec<IntVec> = (0..k)
            .map(|i| u.row(i).scale(&Int::from(rng.gen_range(1..=4))))
            .collect();
        let g_lat = Sublattice::span(&scaled, d).unwrap();
        let coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
        let g = scaled
            .iter()
            .zip(&coeffs)
            .fold(IntVec::zeros(d), |acc, (b, &c)| &acc + &b.scale(&Int::from(c)));
        let s = cone_translate(&tau, &g_lat, &g).unwrap();
        prop_assert!(g_lat.contains(&s));
        prop_assert!(tau.contains(&s, ContainMode::Closed).unwrap());
        prop_assert!(tau.contains(&(&g + &s), ContainMode::Closed).unwrap());
    }
}

/// Irreducible points of `C ∩ Z^2` found by brute force.
fn brute_irreducibles(c: &GenCone, r: i64) -> BTreeSet<IntVec> {
    let inside = |m: &IntVec| c.contains(m, ContainMode::Closed).unwrap();
    let big: Vec<IntVec> = box_points(2, 3 * r)
        .into_iter()
        .filter(|m| !m.is_zero() && inside(m))
        .collect();
    box_points(2, r)
        .into_iter()
        .filter(|m| !m.is_zero() && inside(m))
        .filter(|m| !big.iter().any(|a| a != m && inside(&(m - a))))
        .collect()
}

#[test]
fn hilbert_bases_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let z2 = Sublattice::full(2);
    for _ in 0..60 {
        let a = IntVec::from_i64(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5)]);
        let b = IntVec::from_i64(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5)]);
        let c = GenCone::from_generators(2, &[a.clone(), b.clone()]).unwrap();
        if !c.is_pointed() || c.dim() < 2 {
            continue;
        }
        let hb: BTreeSet<IntVec> = hilbert_basis(&c, &z2).unwrap().into_iter().collect();
        assert_eq!(hb, brute_irreducibles(&c, 10), "cone over {a}, {b}");
    }
}
