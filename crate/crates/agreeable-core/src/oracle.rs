//! Value-oracle solver: covering-design search for an agreeable set under
//! black-box set utilities, plus the planted threshold oracle used as the
//! adversarial instance family.
//!
//! The solver enumerates a covering design: the universe is split into
//! `ceil(m/p)` consecutive parts and each block is the union of `q` distinct
//! parts, padded to size exactly `p*q`. Every subset of at most `q` items
//! lies inside some block, so if a small agreeable set exists, one of the
//! blocks is agreeable; otherwise the whole universe is returned.

use itertools::Itertools;

use crate::agreeability::is_agreeable_oracle;
use crate::error::{Error, Result};
use crate::instance::{Agents, ItemSet, Items, QueryReport, ValueOracle};
use crate::util::{binomial_saturating, clamped_ln_ln};

/// Default cap on the number of covering-design blocks.
pub const DEFAULT_BLOCK_CAP: u64 = 1_000_000;

/// Covering-design parameters for a universe of m items.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverParams {
    pub epsilon: f64,
    /// Number of parts per block; blocks cover every subset of size <= q.
    pub q: u32,
    /// Part size.
    pub p: u32,
    /// Number of blocks, `C(ceil(m/p), q)`.
    pub ell: u64,
}

/// Picks `q = floor(ln m / (eps * max(1, ln ln m)))` and
/// `p = floor(eps * m * max(1, ln ln m) / (q * ln m))`, both clamped to at
/// least 1 and with `p` reduced so that `p*q <= m`, then counts the blocks.
pub fn choose_parameters(m: u32, epsilon: f64) -> Result<CoverParams> {
    choose_parameters_with(m, epsilon, DEFAULT_BLOCK_CAP)
}

/// [`choose_parameters`] with an explicit block-count cap. Exceeding the cap
/// is an error (silent truncation would void the coverage guarantee);
/// it signals that epsilon is too small for this universe.
pub fn choose_parameters_with(m: u32, epsilon: f64, cap: u64) -> Result<CoverParams> {
    if m < 2 {
        return Err(Error::InvalidParameter(
            "covering parameters need at least 2 items".into(),
        ));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let ln_m = (m as f64).ln();
    let ll = clamped_ln_ln(m);
    // clamps keep 1 <= q, 1 <= p, and p*q <= m for every (m, epsilon)
    let q = ((ln_m / (epsilon * ll)).floor() as u32).clamp(1, m);
    let mut p = ((epsilon * (m as f64) * ll / ((q as f64) * ln_m)).floor() as u32).max(1);
    p = p.min(m / q).max(1);
    let parts = m.div_ceil(p);
    let blocks = binomial_saturating(parts as u64, q as u64);
    if blocks > cap as u128 {
        return Err(Error::BlockCapExceeded { blocks, cap });
    }
    Ok(CoverParams {
        epsilon,
        q,
        p,
        ell: blocks as u64,
    })
}

/// A covering design: blocks of size exactly `p*q` over `m` items such that
/// every subset of size at most `q` is contained in some block.
#[derive(Debug, Clone)]
pub struct CoveringDesign {
    m: u32,
    p: u32,
    q: u32,
    parts: Vec<Vec<u32>>,
    blocks: Vec<ItemSet>,
}

impl CoveringDesign {
    pub fn universe_size(&self) -> u32 {
        self.m
    }

    pub fn part_size(&self) -> u32 {
        self.p
    }

    pub fn parts_per_block(&self) -> u32 {
        self.q
    }

    /// The underlying partition into consecutive index ranges of size <= p.
    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    /// Blocks in lexicographic part-combination order.
    pub fn blocks(&self) -> &[ItemSet] {
        &self.blocks
    }
}

/// Builds the covering design for the given part size and parts-per-block
/// count. Blocks are unions of `q` distinct parts, padded with the smallest
/// unused item indices to size exactly `p*q`, and emitted in lexicographic
/// part-combination order.
pub fn build_covering_design(m: u32, p: u32, q: u32) -> Result<CoveringDesign> {
    if m == 0 {
        return Err(Error::EmptyUniverse);
    }
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter("p and q must be at least 1".into()));
    }
    let pq = p
        .checked_mul(q)
        .ok_or_else(|| Error::InvalidParameter("p*q overflows".into()))?;
    if pq > m {
        return Err(Error::InvalidParameter(format!(
            "p*q = {pq} exceeds the universe size {m}"
        )));
    }
    let items = Items::new(m)?;
    let part_count = m.div_ceil(p);
    let block_count = binomial_saturating(part_count as u64, q as u64);
    if block_count > DEFAULT_BLOCK_CAP as u128 {
        return Err(Error::BlockCapExceeded {
            blocks: block_count,
            cap: DEFAULT_BLOCK_CAP,
        });
    }
    let parts: Vec<Vec<u32>> = (0..part_count)
        .map(|i| {
            let lo = i * p + 1;
            let hi = ((i + 1) * p).min(m);
            (lo..=hi).collect()
        })
        .collect();

    let mut blocks = Vec::with_capacity(block_count as usize);
    for combo in (0..part_count as usize).combinations(q as usize) {
        let mut members: Vec<u32> = combo.iter().flat_map(|&i| parts[i].iter().copied()).collect();
        members.sort_unstable();
        if (members.len() as u32) < pq {
            // pad with the smallest unused indices up to exactly p*q
            let mut present = vec![false; m as usize];
            for &x in &members {
                present[(x - 1) as usize] = true;
            }
            for x in 1..=m {
                if members.len() as u32 == pq {
                    break;
                }
                if !present[(x - 1) as usize] {
                    members.push(x);
                    present[(x - 1) as usize] = true;
                }
            }
            members.sort_unstable();
        }
        blocks.push(ItemSet::new(items, members)?);
    }
    Ok(CoveringDesign { m, p, q, parts, blocks })
}

/// The planted threshold oracle over a single agent: a set is valued 1 when
/// it holds at least half the items or contains the planted set, else 0.
///
/// An empty planted set means the pure threshold function (no small solution
/// exists at all), not "everything is agreeable".
#[derive(Debug, Clone)]
pub struct PlantedOracle {
    items: Items,
    t_star: ItemSet,
}

/// Builds a planted oracle over `m` items; `t_star` may be empty.
pub fn make_planted_oracle(m: u32, t_star: ItemSet) -> Result<PlantedOracle> {
    let items = Items::new(m)?;
    if t_star.universe_size() != m {
        return Err(Error::UniverseMismatch {
            set_m: t_star.universe_size(),
            expected_m: m,
        });
    }
    Ok(PlantedOracle { items, t_star })
}

impl PlantedOracle {
    pub fn items(&self) -> Items {
        self.items
    }

    pub fn planted_set(&self) -> &ItemSet {
        &self.t_star
    }

    /// Evaluates the oracle on a set: 1 when `2|T| >= m` or the planted set
    /// is nonempty and contained in `T`, else 0. Monotone by construction.
    pub fn value(&self, set: &ItemSet) -> f64 {
        let half = 2 * set.len() >= self.items.count();
        let planted = !self.t_star.is_empty() && self.t_star.is_subset_of(set);
        if half || planted {
            1.0
        } else {
            0.0
        }
    }

    /// The exact minimum agreeable set size for this oracle.
    pub fn optimum_size(&self) -> u32 {
        let half = self.items.count().div_ceil(2);
        if self.t_star.is_empty() {
            half
        } else {
            half.min(self.t_star.len())
        }
    }

    /// Wraps the oracle as a single-agent [`ValueOracle`] with a fresh
    /// query accountant.
    pub fn oracle(&self) -> ValueOracle {
        let planted = self.clone();
        ValueOracle::new(
            self.items,
            Agents::new(1).expect("one agent"),
            Box::new(move |_, set| Ok(planted.value(set))),
        )
    }
}

/// Accountant snapshot: (total queries, distinct queries).
pub fn query_report(oracle: &ValueOracle) -> QueryReport {
    oracle.report()
}

/// Covering-design solver with the default block cap.
pub fn solve_oracle(oracle: &ValueOracle, epsilon: f64) -> Result<ItemSet> {
    solve_oracle_with(oracle, epsilon, DEFAULT_BLOCK_CAP)
}

/// Searches the covering design for an agreeable block; the first agreeable
/// block in enumeration order wins, and the whole universe is the fallback.
///
/// The caller vouches that the oracle is monotone; under that contract the
/// fallback is always agreeable, so it is returned without further queries
/// and the query total stays within `2 * n * ell`. A universe of one item is
/// resolved by checking both subsets directly.
pub fn solve_oracle_with(oracle: &ValueOracle, epsilon: f64, cap: u64) -> Result<ItemSet> {
    let items = oracle.items();
    if items.count() == 1 {
        let empty = ItemSet::empty(items);
        if is_agreeable_oracle(oracle, &empty)? {
            return Ok(empty);
        }
        let full = ItemSet::full(items);
        if is_agreeable_oracle(oracle, &full)? {
            return Ok(full);
        }
        return Err(Error::NonMonotoneOracle);
    }
    let params = choose_parameters_with(items.count(), epsilon, cap)?;
    let design = build_covering_design(items.count(), params.p, params.q)?;
    for block in design.blocks() {
        if is_agreeable_oracle(oracle, block)? {
            return Ok(block.clone());
        }
    }
    Ok(ItemSet::full(items))
}
