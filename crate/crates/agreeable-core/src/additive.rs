//! Additive solvers: exact minimum-size agreeable sets by brute force and by
//! a pseudo-polynomial dynamic program, plus a greedy covering-integer-
//! program approximation.
//!
//! All additive arithmetic is exact. The brute force enumerates subsets by
//! increasing cardinality (lexicographic within a cardinality), so it returns
//! the minimum-size agreeable set with the lexicographically smallest member
//! list; the DP reconstructs the same set. Agents with zero total utility
//! are satisfied by any set (the agreeability inequality degenerates to
//! 0 >= 0), so their covering rows are dropped as trivially satisfied.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::{AdditiveProfile, ItemSet};

/// Default item cap for the exhaustive solver.
pub const DEFAULT_BRUTE_CAP: u32 = 24;
/// Default agent cap for the dynamic program.
pub const DEFAULT_DP_AGENT_CAP: u32 = 4;
/// Default cap on the dense-equivalent DP table size
/// `(m+1) * prod(sigma_i + 1)`.
pub const DEFAULT_DP_MEMORY_CAP: u64 = 200_000_000;

/// Exhaustive minimum-size agreeable set, with the default item cap.
pub fn solve_bruteforce(profile: &AdditiveProfile) -> Result<ItemSet> {
    solve_bruteforce_with(profile, DEFAULT_BRUTE_CAP)
}

/// Exhaustive search by increasing cardinality; among minimum-size agreeable
/// sets, the lexicographically smallest member list is returned.
pub fn solve_bruteforce_with(profile: &AdditiveProfile, cap: u32) -> Result<ItemSet> {
    let m = profile.items().count();
    if m > cap {
        return Err(Error::BruteForceCapExceeded { m, cap });
    }
    let n = profile.agents().count() as usize;
    let rows: Vec<&[BigInt]> = profile.agents().ids().map(|i| profile.scaled_row(i)).collect();
    let totals: Vec<&BigInt> = profile.agents().ids().map(|i| profile.scaled_total(i)).collect();

    let mut sums: Vec<BigInt> = vec![BigInt::zero(); n];
    let mut chosen: Vec<u32> = Vec::new();

    fn descend(
        start: u32,
        remaining: u32,
        m: u32,
        rows: &[&[BigInt]],
        totals: &[&BigInt],
        sums: &mut Vec<BigInt>,
        chosen: &mut Vec<u32>,
    ) -> bool {
        if remaining == 0 {
            return sums.iter().zip(totals.iter()).all(|(s, t)| {
                let doubled: BigInt = s + s;
                &doubled >= *t
            });
        }
        // leave room for the remaining picks
        for x in start..=(m - remaining + 1) {
            chosen.push(x);
            for (i, row) in rows.iter().enumerate() {
                sums[i] += &row[(x - 1) as usize];
            }
            if descend(x + 1, remaining - 1, m, rows, totals, sums, chosen) {
                return true;
            }
            for (i, row) in rows.iter().enumerate() {
                sums[i] -= &row[(x - 1) as usize];
            }
            chosen.pop();
        }
        false
    }

    for size in 0..=m {
        if descend(1, size, m, &rows, &totals, &mut sums, &mut chosen) {
            return ItemSet::new(profile.items(), chosen);
        }
        debug_assert!(chosen.is_empty());
    }
    unreachable!("the whole universe is always agreeable under nonnegative utilities")
}

/// Sparse dynamic-programming table over achievable per-agent utility
/// vectors.
///
/// `layers[j]` maps each utility vector achievable by a subset of the items
/// `j+1..=m` (0-based suffix starting at item j+1) to the minimum number of
/// items realizing it. Only reachable vectors are stored; the dense-
/// equivalent size `(m+1) * prod(sigma_i + 1)` is what the memory cap
/// guards.
#[derive(Debug)]
pub struct DpTable {
    layers: Vec<HashMap<Vec<u64>, u32>>,
    utilities: Vec<Vec<u64>>,
    totals: Vec<u64>,
    m: u32,
}

impl DpTable {
    /// Builds the suffix layers for an integral profile.
    pub fn build(profile: &AdditiveProfile, agent_cap: u32, memory_cap: u64) -> Result<Self> {
        let n = profile.agents().count();
        if n > agent_cap {
            return Err(Error::DpAgentCapExceeded { n, cap: agent_cap });
        }
        if !profile.is_integral() {
            for i in profile.agents().ids() {
                for j in profile.items().ids() {
                    if !profile.utility(i, j).is_integer() {
                        return Err(Error::NonIntegerUtility { agent: i, item: j });
                    }
                }
            }
        }
        let m = profile.items().count();
        let mut dense_size = BigInt::from(m + 1);
        for i in profile.agents().ids() {
            dense_size *= profile.scaled_total(i) + BigInt::one();
        }
        if dense_size > BigInt::from(memory_cap) {
            return Err(Error::DpMemoryCapExceeded {
                required: dense_size.to_string(),
                cap: memory_cap,
            });
        }
        // scaled rows equal the raw rows for an integral profile
        let utilities: Vec<Vec<u64>> = profile
            .agents()
            .ids()
            .map(|i| {
                profile
                    .scaled_row(i)
                    .iter()
                    .map(|v| v.to_u64().expect("bounded by the memory cap"))
                    .collect()
            })
            .collect();
        let totals: Vec<u64> = profile
            .agents()
            .ids()
            .map(|i| profile.scaled_total(i).to_u64().expect("bounded by the memory cap"))
            .collect();

        let n = n as usize;
        let mut layers: Vec<HashMap<Vec<u64>, u32>> = vec![HashMap::new(); m as usize + 1];
        layers[m as usize].insert(vec![0u64; n], 0);
        for j in (0..m as usize).rev() {
            let (head, tail) = layers.split_at_mut(j + 1);
            let next = &tail[0];
            let layer = &mut head[j];
            layer.reserve(next.len() * 2);
            for (vector, &count) in next {
                // skip item j+1
                layer
                    .entry(vector.clone())
                    .and_modify(|c| *c = (*c).min(count))
                    .or_insert(count);
                // take item j+1
                let mut taken = vector.clone();
                for (i, v) in taken.iter_mut().enumerate() {
                    *v += utilities[i][j];
                }
                layer
                    .entry(taken)
                    .and_modify(|c| *c = (*c).min(count + 1))
                    .or_insert(count + 1);
            }
        }
        Ok(DpTable { layers, utilities, totals, m })
    }

    /// Minimum size of an agreeable set: the best count over full-universe
    /// vectors with `2*y_i >= sigma_i` for every agent.
    pub fn minimum_size(&self) -> u32 {
        let zeros = vec![0u64; self.totals.len()];
        self.layers[0]
            .iter()
            .filter(|(vector, _)| self.meets_target(vector, &zeros))
            .map(|(_, &count)| count)
            .min()
            .expect("the whole universe is always agreeable")
    }

    fn meets_target(&self, suffix: &[u64], acc: &[u64]) -> bool {
        suffix
            .iter()
            .zip(acc.iter())
            .zip(self.totals.iter())
            .all(|((y, a), sigma)| 2 * (y + a) >= *sigma)
    }

    /// Reconstructs the minimum-size agreeable set with the lexicographically
    /// smallest member list: walk the items in order and include one whenever
    /// the remainder still completes an optimal solution.
    pub fn reconstruct(&self) -> Vec<u32> {
        let optimum = self.minimum_size();
        let n = self.totals.len();
        let mut acc = vec![0u64; n];
        let mut chosen: Vec<u32> = Vec::new();
        for j in 0..self.m as usize {
            if (chosen.len() as u32) == optimum {
                break;
            }
            let budget = optimum - chosen.len() as u32 - 1;
            let mut with_item = acc.clone();
            for (i, v) in with_item.iter_mut().enumerate() {
                *v += self.utilities[i][j];
            }
            let feasible = self.layers[j + 1].iter().any(|(vector, &count)| {
                count <= budget && self.meets_target(vector, &with_item)
            });
            if feasible {
                acc = with_item;
                chosen.push(j as u32 + 1);
            }
        }
        debug_assert_eq!(chosen.len() as u32, optimum);
        chosen
    }
}

/// Pseudo-polynomial exact solver with default caps.
pub fn solve_dp(profile: &AdditiveProfile) -> Result<ItemSet> {
    solve_dp_with(profile, DEFAULT_DP_AGENT_CAP, DEFAULT_DP_MEMORY_CAP)
}

/// Pseudo-polynomial exact solver over integer utilities.
///
/// Requires integral utilities, at most `agent_cap` agents, and a dense-
/// equivalent table within `memory_cap`. The result matches
/// [`solve_bruteforce`] exactly, including the tie-break.
pub fn solve_dp_with(
    profile: &AdditiveProfile,
    agent_cap: u32,
    memory_cap: u64,
) -> Result<ItemSet> {
    let table = DpTable::build(profile, agent_cap, memory_cap)?;
    ItemSet::new(profile.items(), table.reconstruct())
}

/// The covering-program view of an additive instance: one row per agent with
/// positive total utility, entries `A[i][s] = 2*u_i(s) / sigma_i`, demand 1
/// per row, and 0/1 variables (objective and upper bounds are all ones).
#[derive(Debug, Clone)]
pub struct CoverMatrix {
    rows: Vec<CoverRow>,
    trivially_satisfied: Vec<u32>,
    num_items: u32,
}

/// A retained covering row.
#[derive(Debug, Clone)]
pub struct CoverRow {
    /// 1-based agent index this row came from.
    pub agent: u32,
    /// Normalized coefficients; the row sums to exactly 2.
    pub coefficients: Vec<BigRational>,
}

impl CoverMatrix {
    pub fn rows(&self) -> &[CoverRow] {
        &self.rows
    }

    /// Agents with zero total utility, satisfied by every set.
    pub fn trivially_satisfied(&self) -> &[u32] {
        &self.trivially_satisfied
    }

    pub fn num_items(&self) -> u32 {
        self.num_items
    }
}

/// Builds the normalized covering matrix; rows for zero-total agents are
/// omitted and recorded as trivially satisfied.
pub fn build_cover_matrix(profile: &AdditiveProfile) -> CoverMatrix {
    let mut rows = Vec::new();
    let mut trivially_satisfied = Vec::new();
    for i in profile.agents().ids() {
        let sigma = profile.total(i);
        if sigma.is_zero() {
            trivially_satisfied.push(i);
            continue;
        }
        let coefficients = profile
            .items()
            .ids()
            .map(|j| {
                let doubled = profile.utility(i, j) * BigRational::from_integer(2.into());
                doubled / sigma
            })
            .collect();
        rows.push(CoverRow { agent: i, coefficients });
    }
    CoverMatrix {
        rows,
        trivially_satisfied,
        num_items: profile.items().count(),
    }
}

/// Greedy covering solver: repeatedly add the item with the largest total
/// truncated marginal coverage `sum_i min(A[i][s], deficit_i)` until every
/// retained row reaches demand 1. Ties break to the smallest item index.
/// The output is always agreeable: a row reaching 1 is exactly
/// `2*u_i(T) >= sigma_i`.
pub fn solve_greedy_cip(profile: &AdditiveProfile) -> ItemSet {
    let matrix = build_cover_matrix(profile);
    let m = matrix.num_items() as usize;
    let mut deficits: Vec<BigRational> = vec![BigRational::one(); matrix.rows().len()];
    let mut chosen = vec![false; m];
    let mut members: Vec<u32> = Vec::new();

    loop {
        let open: Vec<usize> = deficits
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_positive())
            .map(|(i, _)| i)
            .collect();
        if open.is_empty() {
            break;
        }
        let mut best: Option<(usize, BigRational)> = None;
        for s in 0..m {
            if chosen[s] {
                continue;
            }
            let mut score = BigRational::zero();
            for &i in &open {
                let a = &matrix.rows()[i].coefficients[s];
                score += a.min(&deficits[i]).clone();
            }
            match &best {
                Some((_, top)) if score <= *top => {}
                _ => best = Some((s, score)),
            }
        }
        let (pick, score) = best.expect("an uncovered row always has an unchosen positive entry");
        debug_assert!(score.is_positive());
        chosen[pick] = true;
        members.push(pick as u32 + 1);
        for (i, deficit) in deficits.iter_mut().enumerate() {
            *deficit -= &matrix.rows()[i].coefficients[pick];
        }
    }
    members.sort_unstable();
    ItemSet::new(profile.items(), members).expect("picks index the universe")
}
