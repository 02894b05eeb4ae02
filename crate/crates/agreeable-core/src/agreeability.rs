//! Decision procedures for agreeability.
//!
//! A set `T` is agreeable to an agent when the agent values it at least as
//! much as its complement. For additive utilities that is the exact integer
//! comparison `2 * u(T) >= u(S)`; for oracle-backed preferences it takes two
//! queries per agent. For purely ordinal information, `T` is *necessarily*
//! agreeable with respect to a strict ranking exactly when every ranking
//! prefix of length k contains at least k/2 members of `T` (the prefix-
//! majority condition), and that comparison is done as `2*c_k >= k` in
//! integers throughout.

use crate::error::{Error, Result};
use crate::instance::{AdditiveProfile, ItemSet, ValueOracle};

/// Running intersection counts `c_k = |top-k items ∩ T|` along a ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCounts {
    counts: Vec<u32>,
}

impl PrefixCounts {
    /// Counts memberships along `ranking` (most preferred first).
    ///
    /// `ranking` must be a strict permutation of the universe of `set`.
    pub fn new(ranking: &[u32], set: &ItemSet) -> Self {
        assert_eq!(
            ranking.len(),
            set.universe_size() as usize,
            "ranking and set universe disagree"
        );
        let mask = set.membership_mask();
        let mut counts = Vec::with_capacity(ranking.len());
        let mut c = 0u32;
        for &item in ranking {
            if mask[(item - 1) as usize] {
                c += 1;
            }
            counts.push(c);
        }
        PrefixCounts { counts }
    }

    /// `counts()[k-1]` is the intersection size with the top-k prefix.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// The prefix-majority condition: `2*c_k >= k` for every k.
    pub fn satisfies_majority(&self) -> bool {
        self.counts
            .iter()
            .enumerate()
            .all(|(i, &c)| 2 * c >= i as u32 + 1)
    }

    /// All prefixes that miss the majority condition, with their shortfall
    /// `k/2 - c_k`.
    pub fn deficits(&self) -> Vec<(u32, f64)> {
        self.counts
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| {
                let k = i as u32 + 1;
                (2 * c < k).then(|| (k, k as f64 / 2.0 - c as f64))
            })
            .collect()
    }
}

/// True iff `T` is agreeable to every agent of an additive profile,
/// i.e. `2 * u_i(T) >= sigma_i` for all agents, in exact arithmetic.
pub fn is_agreeable_additive(profile: &AdditiveProfile, set: &ItemSet) -> Result<bool> {
    if set.universe_size() != profile.items().count() {
        return Err(Error::UniverseMismatch {
            set_m: set.universe_size(),
            expected_m: profile.items().count(),
        });
    }
    for agent in profile.agents().ids() {
        let row = profile.scaled_row(agent);
        let mut doubled = num_bigint::BigInt::from(0);
        for x in set.iter() {
            doubled += &row[(x - 1) as usize];
        }
        doubled *= 2;
        if &doubled < profile.scaled_total(agent) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `T` is agreeable to every agent of an oracle-backed instance.
///
/// Issues exactly two queries per agent (the set and its complement); cache
/// hits are not re-counted by the accountant. Evaluation failures propagate.
pub fn is_agreeable_oracle(oracle: &ValueOracle, set: &ItemSet) -> Result<bool> {
    let complement = set.complement();
    let mut agreeable = true;
    for agent in oracle.agents().ids() {
        let own = oracle.query(agent, set)?;
        let other = oracle.query(agent, &complement)?;
        if own < other {
            agreeable = false;
        }
    }
    Ok(agreeable)
}

/// True iff `T` is necessarily agreeable with respect to a strict ranking:
/// agreeable under every responsive preference consistent with the ranking.
/// For strict rankings the prefix-majority condition is an exact
/// characterization, checked here as `2*c_k >= k`.
pub fn is_necessarily_agreeable(ranking: &[u32], set: &ItemSet) -> bool {
    PrefixCounts::new(ranking, set).satisfies_majority()
}

/// Diagnostic companion to [`is_necessarily_agreeable`]: every prefix length
/// k where the majority condition fails, with deficit `k/2 - c_k`. Empty iff
/// the set is necessarily agreeable.
pub fn necessary_agreeability_deficits(ranking: &[u32], set: &ItemSet) -> Vec<(u32, f64)> {
    PrefixCounts::new(ranking, set).deficits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Agents, Items};
    use crate::oracle::make_planted_oracle;
    use proptest::prelude::*;

    fn set(m: u32, members: &[u32]) -> ItemSet {
        ItemSet::new(Items::new(m).unwrap(), members.to_vec()).unwrap()
    }

    #[test]
    fn additive_equality_case_is_agreeable() {
        let profile = AdditiveProfile::from_integers(vec![vec![1, 2, 3]]).unwrap();
        assert!(is_agreeable_additive(&profile, &set(3, &[3])).unwrap());
    }

    #[test]
    fn additive_needs_every_agent() {
        let profile = AdditiveProfile::from_integers(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(!is_agreeable_additive(&profile, &set(2, &[1])).unwrap());
    }

    #[test]
    fn additive_balanced_instance() {
        let profile =
            AdditiveProfile::from_integers(vec![vec![1, 2, 3, 4], vec![9, 8, 7, 6]]).unwrap();
        assert!(is_agreeable_additive(&profile, &set(4, &[1, 4])).unwrap());
        assert!(!is_agreeable_additive(&profile, &set(4, &[1, 2])).unwrap());
    }

    #[test]
    fn additive_universe_mismatch_is_an_error() {
        let profile = AdditiveProfile::from_integers(vec![vec![1, 2]]).unwrap();
        assert!(is_agreeable_additive(&profile, &set(3, &[1])).is_err());
    }

    #[test]
    fn oracle_whole_set_is_agreeable_for_planted() {
        let planted = make_planted_oracle(4, set(4, &[1])).unwrap();
        let oracle = planted.oracle();
        assert!(is_agreeable_oracle(&oracle, &set(4, &[1, 2, 3, 4])).unwrap());
    }

    #[test]
    fn oracle_planted_singleton() {
        let planted = make_planted_oracle(4, set(4, &[1])).unwrap();
        let oracle = planted.oracle();
        // the planted set itself: value 1 vs complement of size 3 (also 1)
        assert!(is_agreeable_oracle(&oracle, &set(4, &[1])).unwrap());
        // a different singleton: value 0 vs complement of size 3 (value 1)
        assert!(!is_agreeable_oracle(&oracle, &set(4, &[2])).unwrap());
    }

    #[test]
    fn oracle_issues_two_queries_per_agent() {
        let planted = make_planted_oracle(4, set(4, &[1])).unwrap();
        let oracle = planted.oracle();
        is_agreeable_oracle(&oracle, &set(4, &[1])).unwrap();
        let report = oracle.report();
        assert_eq!(report.total, 2);
        assert_eq!(report.distinct, 2);
    }

    #[test]
    fn necessary_prefix_examples() {
        let identity4: Vec<u32> = (1..=4).collect();
        assert!(is_necessarily_agreeable(&identity4, &set(4, &[1, 3])));
        assert!(!is_necessarily_agreeable(&[1], &set(1, &[])));
        let identity5: Vec<u32> = (1..=5).collect();
        assert!(is_necessarily_agreeable(&identity5, &set(5, &[1, 3, 5])));
    }

    #[test]
    fn deficit_examples() {
        let identity4: Vec<u32> = (1..=4).collect();
        assert!(necessary_agreeability_deficits(&identity4, &set(4, &[1, 3])).is_empty());
        assert_eq!(
            necessary_agreeability_deficits(&[1, 2], &set(2, &[2])),
            vec![(1, 0.5)]
        );
        assert_eq!(
            necessary_agreeability_deficits(&[1, 2], &set(2, &[])),
            vec![(1, 0.5), (2, 1.0)]
        );
    }

    #[test]
    fn full_set_passes_and_empty_set_fails_for_all_m() {
        for m in 1u32..=12 {
            let items = Items::new(m).unwrap();
            let ranking: Vec<u32> = (1..=m).rev().collect();
            assert!(is_necessarily_agreeable(&ranking, &ItemSet::full(items)));
            assert!(!is_necessarily_agreeable(&ranking, &ItemSet::empty(items)));
        }
    }

    #[test]
    fn prefix_counts_shape() {
        let pc = PrefixCounts::new(&[2, 1, 4, 3], &set(4, &[2, 3]));
        assert_eq!(pc.counts(), &[1, 1, 1, 2]);
    }

    #[test]
    fn additive_oracle_wrapper_agrees_with_exact_check() {
        let profile =
            AdditiveProfile::from_integers(vec![vec![1, 2, 3, 4], vec![9, 8, 7, 6]]).unwrap();
        let oracle = ValueOracle::from_additive(&profile);
        for members in [vec![], vec![1], vec![1, 4], vec![2, 3], vec![1, 2, 3, 4]] {
            let t = set(4, &members);
            assert_eq!(
                is_agreeable_oracle(&oracle, &t).unwrap(),
                is_agreeable_additive(&profile, &t).unwrap(),
                "disagreement on {t}"
            );
        }
        let _ = Agents::new(2).unwrap();
    }

    proptest! {
        /// Monotone utilities: enlarging an agreeable set keeps it agreeable.
        #[test]
        fn superset_closure(
            m in 1u32..10,
            rows in proptest::collection::vec(proptest::collection::vec(0u64..20, 10), 1..4),
            picks in proptest::collection::vec(0u32..10, 0..10),
            extra in proptest::collection::vec(0u32..10, 0..10),
        ) {
            let rows: Vec<Vec<u64>> = rows.into_iter().map(|r| r[..m as usize].to_vec()).collect();
            let profile = AdditiveProfile::from_integers(rows).unwrap();
            let mut base: Vec<u32> = picks.into_iter().map(|v| v % m + 1).collect();
            base.sort_unstable();
            base.dedup();
            let t = set(m, &base);
            let mut larger = base.clone();
            larger.extend(extra.into_iter().map(|v| v % m + 1));
            larger.sort_unstable();
            larger.dedup();
            let t2 = set(m, &larger);
            if is_agreeable_additive(&profile, &t).unwrap() {
                prop_assert!(is_agreeable_additive(&profile, &t2).unwrap());
            }
        }

        /// For a strictly decreasing positive row written in ranking order,
        /// the prefix-majority condition implies additive agreeability.
        #[test]
        fn prefix_majority_implies_decreasing_row_agreeability(
            m in 1u32..10,
            gaps in proptest::collection::vec(1u64..8, 10),
            perm_seed in 0u64..1000,
            picks in proptest::collection::vec(0u32..10, 0..10),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed);
            let mut ranking: Vec<u32> = (1..=m).collect();
            ranking.shuffle(&mut rng);

            // strictly decreasing positive values along the ranking
            let mut value = 1u64;
            let mut row = vec![0u64; m as usize];
            for (pos, &item) in ranking.iter().enumerate().rev() {
                row[(item - 1) as usize] = value;
                value += gaps[pos];
            }
            let profile = AdditiveProfile::from_integers(vec![row]).unwrap();

            let mut members: Vec<u32> = picks.into_iter().map(|v| v % m + 1).collect();
            members.sort_unstable();
            members.dedup();
            let t = set(m, &members);
            if is_necessarily_agreeable(&ranking, &t) {
                prop_assert!(is_agreeable_additive(&profile, &t).unwrap());
            }
        }
    }
}
