use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semitoric::groups::{
    extract_groups, functor_f, gamma_member, is_seminormal_fan, validate_groups, validate_monoids, FanWithGroups,
};
use semitoric::lattice::IntVec;
use semitoric::monoid::{is_semisaturated, m_group, sum_with_group};
use semitoric::sample::random_fan_with_groups;

fn instances(seed: u64, count: usize) -> Vec<FanWithGroups> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| random_fan_with_groups(&mut rng, 2 + i % 2))
        .collect()
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

#[test]
fn functor_then_extraction_is_identity() {
    for (i, x) in instances(2024, 120).iter().enumerate() {
        assert!(validate_groups(x).passed());
        let y = functor_f(x).unwrap();
        let report = validate_monoids(&y).unwrap();
        assert!(report.passed(), "instance {i}: {:?}", report.failures);
        assert!(is_seminormal_fan(&y).unwrap(), "instance {i}");
        assert_eq!(extract_groups(&y).unwrap().groups(), x.groups(), "instance {i}");
    }
}

#[test]
fn localizations_are_semisaturated() {
    for x in instances(77, 30) {
        let y = functor_f(&x).unwrap();
        let fan = x.fan();
        for sigma in 0..fan.len() {
            for tau in fan.faces_of(sigma) {
                let local = sum_with_group(y.monoid(sigma), x.group(tau)).unwrap();
                assert!(is_semisaturated(&local).unwrap());
                assert_eq!(m_group(y.monoid(sigma), fan.cone(tau)).unwrap(), *x.group(tau));
            }
        }
    }
}

#[test]
fn gamma_membership_matches_generators() {
    for x in instances(5, 24) {
        let y = functor_f(&x).unwrap();
        let points = box_points(x.rank(), if x.rank() == 2 { 6 } else { 3 });
        for sigma in 0..x.fan().len() {
            for m in &points {
                assert_eq!(
                    gamma_member(&x, sigma, m).unwrap(),
                    y.monoid(sigma).contains(m).unwrap(),
                    "cone {} at {m}",
                    x.fan().key(sigma)
                );
            }
        }
    }
}

#[test]
fn functor_is_deterministic() {
    for x in instances(11, 10) {
        let a = functor_f(&x).unwrap();
        let b = functor_f(&x).unwrap();
        for (s, t) in a.monoids().iter().zip(b.monoids()) {
            assert_eq!(s.generators(), t.generators());
        }
    }
}
