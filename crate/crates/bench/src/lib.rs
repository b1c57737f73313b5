//! Fixed inputs shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semitoric::groups::FanWithGroups;
use semitoric::lattice::{IntMatrix, IntVec};
use semitoric::monoid::{make_monoid, AffineMonoid};
use semitoric::sample::{random_fan_with_groups, random_monoid, random_unimodular};

pub fn monoid(gens: &[&[i64]]) -> AffineMonoid {
    let gens: Vec<IntVec> = gens.iter().map(|g| IntVec::from_i64(g)).collect();
    make_monoid(&gens, gens.first().map_or(0, IntVec::dim)).expect("generators share a rank")
}

/// Seeded random fans with groups of rank `d`.
pub fn fans(seed: u64, d: usize, count: usize) -> Vec<FanWithGroups> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_fan_with_groups(&mut rng, d)).collect()
}

/// Seeded random monoids of rank `d` with entries in `[-bound, bound]`.
pub fn monoids(seed: u64, d: usize, bound: i64, count: usize) -> Vec<AffineMonoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_monoid(&mut rng, d, 4, bound)).collect()
}

/// Seeded random `n × n` unimodular matrices scaled into denser integer data.
pub fn matrices(seed: u64, n: usize, count: usize) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = random_unimodular(&mut rng, n, 3 * n);
            let b = random_unimodular(&mut rng, n, 3 * n);
            let mut d = IntMatrix::identity(n);
            for i in 0..n {
                d.set(i, i, (i as i64 + 1).into());
            }
            a.mul(&d).mul(&b)
        })
        .collect()
}
