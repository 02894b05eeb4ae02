//! Seeded random instance generators. Identical arguments always produce
//! identical instances.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::instance::{AdditiveProfile, OrdinalProfile};

/// Additive profile with i.i.d. uniform integer utilities in `[0, max_u]`.
pub fn random_additive_profile(m: u32, n: u32, max_u: u64, seed: u64) -> Result<AdditiveProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|_| (0..m).map(|_| rng.gen_range(0..=max_u)).collect())
        .collect();
    AdditiveProfile::from_integers(rows)
}

/// Ordinal profile with independent uniform random permutations.
pub fn random_ordinal_profile(m: u32, n: u32, seed: u64) -> Result<OrdinalProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rankings: Vec<Vec<u32>> = (0..n)
        .map(|_| {
            let mut ranking: Vec<u32> = (1..=m).collect();
            ranking.shuffle(&mut rng);
            ranking
        })
        .collect();
    OrdinalProfile::new(rankings)
}
