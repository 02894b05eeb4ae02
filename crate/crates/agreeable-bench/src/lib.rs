//! Shared instance builders for the solver benchmarks.

use agreeable_core::gen::{random_additive_profile, random_ordinal_profile};
use agreeable_core::oracle::{make_planted_oracle, PlantedOracle};
use agreeable_core::{AdditiveProfile, ItemSet, Items, OrdinalProfile};

pub fn ordinal(m: u32, n: u32) -> OrdinalProfile {
    random_ordinal_profile(m, n, 0x5EED).expect("valid generator arguments")
}

pub fn additive(m: u32, n: u32, max_u: u64) -> AdditiveProfile {
    random_additive_profile(m, n, max_u, 0x5EED).expect("valid generator arguments")
}

pub fn planted_singleton(m: u32) -> PlantedOracle {
    let items = Items::new(m).expect("nonempty universe");
    let t_star = ItemSet::new(items, vec![1]).expect("valid planted set");
    make_planted_oracle(m, t_star).expect("valid planted oracle")
}
