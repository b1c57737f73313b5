use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semitoric::groups::{check_hom_groups, check_hom_monoids, functor_f, FanWithGroups};
use semitoric::lattice::LatticeHom;
use semitoric::sample::{random_fan, random_fan_with_groups, random_groups, random_hom, random_unimodular};

/// Pairs `(φ, X, X')` mixing identities on a shared fan with random maps.
fn pairs(seed: u64, count: usize) -> Vec<(LatticeHom, FanWithGroups, FanWithGroups)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let d = 2 + i % 2;
            match i % 4 {
                0 => {
                    let x = random_fan_with_groups(&mut rng, d);
                    (LatticeHom::identity(d), x.clone(), x)
                }
                1 => {
                    let fan = random_fan(&mut rng, d);
                    let x = random_groups(&mut rng, fan.clone());
                    let x2 = random_groups(&mut rng, fan);
                    (LatticeHom::identity(d), x, x2)
                }
                2 => {
                    let fan = random_fan(&mut rng, d);
                    let x = random_groups(&mut rng, fan.clone());
                    let x2 = random_groups(&mut rng, fan);
                    let phi = if rng.gen_bool(0.5) {
                        LatticeHom::new(random_unimodular(&mut rng, d, 3))
                    } else {
                        random_hom(&mut rng, d, d, 1)
                    };
                    (phi, x, x2)
                }
                _ => {
                    let x = random_fan_with_groups(&mut rng, d);
                    let x2 = random_fan_with_groups(&mut rng, d);
                    (random_hom(&mut rng, d, d, 2), x, x2)
                }
            }
        })
        .collect()
}

#[test]
fn group_and_monoid_morphisms_agree() {
    let mut accepted = 0;
    for (i, (phi, x, x2)) in pairs(31, 80).into_iter().enumerate() {
        let groups = check_hom_groups(&phi, &x, &x2).unwrap().ok;
        let monoids = check_hom_monoids(&phi, &functor_f(&x).unwrap(), &functor_f(&x2).unwrap())
            .unwrap()
            .ok;
        assert_eq!(groups, monoids, "pair {i}");
        accepted += usize::from(groups);
    }
    assert!(accepted > 0);
}
