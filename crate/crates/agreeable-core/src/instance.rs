//! Instance model: item/agent index spaces, item sets, and the three
//! preference representations (ordinal rankings, additive utilities, value
//! oracles).
//!
//! All instance types are immutable after construction and safe to share
//! across concurrent solver runs. The one exception is the [`ValueOracle`]
//! query accountant, which is interior-mutable and therefore owned by a
//! single run.
//!
//! Items and agents are indexed 1-based everywhere in the public API.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The item universe: items are identified by the dense indices `1..=m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Items {
    m: u32,
}

impl Items {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyUniverse);
        }
        Ok(Items { m })
    }

    /// Number of items in the universe.
    pub fn count(&self) -> u32 {
        self.m
    }

    /// Iterator over all item indices, `1..=m`.
    pub fn ids(&self) -> impl Iterator<Item = u32> {
        1..=self.m
    }
}

/// The agent index space `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Agents {
    n: u32,
}

impl Agents {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoAgents);
        }
        Ok(Agents { n })
    }

    pub fn count(&self) -> u32 {
        self.n
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> {
        1..=self.n
    }
}

/// A subset of the item universe, kept as a sorted duplicate-free list of
/// 1-based item indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ItemSet {
    members: Vec<u32>,
    m: u32,
}

impl ItemSet {
    /// Builds a set from arbitrary member order, rejecting duplicates and
    /// out-of-range indices.
    pub fn new(items: Items, mut members: Vec<u32>) -> Result<Self> {
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateItem { item: pair[0] });
            }
        }
        for &x in &members {
            if x == 0 || x > items.count() {
                return Err(Error::ItemOutOfRange {
                    item: x,
                    m: items.count(),
                });
            }
        }
        Ok(ItemSet {
            members,
            m: items.count(),
        })
    }

    /// The empty subset of the given universe.
    pub fn empty(items: Items) -> Self {
        ItemSet {
            members: Vec::new(),
            m: items.count(),
        }
    }

    /// The whole universe as a set.
    pub fn full(items: Items) -> Self {
        ItemSet {
            members: items.ids().collect(),
            m: items.count(),
        }
    }

    pub fn universe_size(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> u32 {
        self.members.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, item: u32) -> bool {
        self.members.binary_search(&item).is_ok()
    }

    /// Complement with respect to the universe.
    pub fn complement(&self) -> ItemSet {
        let mut comp = Vec::with_capacity((self.m as usize) - self.members.len());
        let mut it = self.members.iter().copied().peekable();
        for x in 1..=self.m {
            if it.peek() == Some(&x) {
                it.next();
            } else {
                comp.push(x);
            }
        }
        ItemSet {
            members: comp,
            m: self.m,
        }
    }

    /// True when every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &ItemSet) -> bool {
        let mut oi = other.members.iter().copied().peekable();
        'outer: for &x in &self.members {
            while let Some(&y) = oi.peek() {
                if y < x {
                    oi.next();
                } else if y == x {
                    oi.next();
                    continue 'outer;
                } else {
                    break;
                }
            }
            return false;
        }
        true
    }

    /// Membership mask indexed by `item - 1`, for O(1) lookups in hot loops.
    pub fn membership_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.m as usize];
        for &x in &self.members {
            mask[(x - 1) as usize] = true;
        }
        mask
    }
}

impl fmt::Display for ItemSet {
    /// Space-separated member indices; the empty set renders as "".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &x in &self.members {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

/// A single issue found while validating a profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    /// Agent's ranking does not have exactly m entries.
    RankingLength { agent: u32, len: usize, expected: usize },
    /// Agent ranks the item more than once.
    RankingDuplicate { agent: u32, item: u32 },
    /// Agent ranks an index outside 1..=m.
    RankingOutOfRange { agent: u32, item: u32 },
    /// Utility row does not have exactly m entries.
    RowLength { agent: u32, len: usize, expected: usize },
    /// Negative utility entry.
    NegativeUtility { agent: u32, item: u32 },
    /// Cached row total disagrees with the recomputed sum.
    StaleTotal { agent: u32 },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::RankingLength { agent, len, expected } => {
                write!(f, "agent {agent}: ranking has {len} entries, expected {expected}")
            }
            ValidationIssue::RankingDuplicate { agent, item } => {
                write!(f, "agent {agent}: duplicate index {item} in ranking")
            }
            ValidationIssue::RankingOutOfRange { agent, item } => {
                write!(f, "agent {agent}: ranked index {item} is outside the universe")
            }
            ValidationIssue::RowLength { agent, len, expected } => {
                write!(f, "agent {agent}: utility row has {len} entries, expected {expected}")
            }
            ValidationIssue::NegativeUtility { agent, item } => {
                write!(f, "agent {agent}: negative utility for item {item}")
            }
            ValidationIssue::StaleTotal { agent } => {
                write!(f, "agent {agent}: cached utility total is stale")
            }
        }
    }
}

/// Outcome of profile validation; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn issues(&self) -> &[ValidationIssue] {
        &self.issues
    }

    fn push(&mut self, issue: ValidationIssue) {
        self.issues.push(issue);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        let mut first = true;
        for issue in &self.issues {
            if !first {
                write!(f, "; ")?;
            }
            write!(f, "{issue}")?;
            first = false;
        }
        Ok(())
    }
}

/// Per-agent strict rankings over the items.
///
/// `rankings[j]` lists item indices from most preferred to least preferred;
/// each ranking must be a permutation of `1..=m`. Weak rankings are rejected
/// at construction: the prefix characterization of necessary agreeability is
/// exact only for strict rankings, and every ordinal solver relies on it.
#[derive(Debug, Clone)]
pub struct OrdinalProfile {
    items: Items,
    agents: Agents,
    rankings: Vec<Vec<u32>>,
    /// positions[j][item - 1] = 0-based position of `item` in agent j's ranking.
    positions: Vec<Vec<u32>>,
}

/// Checks raw rankings for permutation violations. Total: never fails.
pub fn validate_rankings(m: u32, rankings: &[Vec<u32>]) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (j, ranking) in rankings.iter().enumerate() {
        let agent = j as u32 + 1;
        if ranking.len() != m as usize {
            report.push(ValidationIssue::RankingLength {
                agent,
                len: ranking.len(),
                expected: m as usize,
            });
            continue;
        }
        let mut seen = vec![false; m as usize];
        for &x in ranking {
            if x == 0 || x > m {
                report.push(ValidationIssue::RankingOutOfRange { agent, item: x });
            } else if seen[(x - 1) as usize] {
                report.push(ValidationIssue::RankingDuplicate { agent, item: x });
            } else {
                seen[(x - 1) as usize] = true;
            }
        }
    }
    report
}

/// Reports every agent whose ranking is not a strict permutation.
pub fn validate_ordinal_profile(profile: &OrdinalProfile) -> ValidationReport {
    validate_rankings(profile.items.count(), &profile.rankings)
}

impl OrdinalProfile {
    /// Validating constructor: every ranking must be a permutation of `1..=m`,
    /// where `m` is the length of the first ranking.
    pub fn new(rankings: Vec<Vec<u32>>) -> Result<Self> {
        if rankings.is_empty() {
            return Err(Error::NoAgents);
        }
        let m = rankings[0].len() as u32;
        if m == 0 {
            return Err(Error::EmptyUniverse);
        }
        let report = validate_rankings(m, &rankings);
        if !report.is_valid() {
            return Err(Error::InvalidProfile(report));
        }
        let positions = rankings
            .iter()
            .map(|ranking| {
                let mut pos = vec![0u32; m as usize];
                for (i, &x) in ranking.iter().enumerate() {
                    pos[(x - 1) as usize] = i as u32;
                }
                pos
            })
            .collect();
        Ok(OrdinalProfile {
            items: Items::new(m)?,
            agents: Agents::new(rankings.len() as u32)?,
            rankings,
            positions,
        })
    }

    pub fn items(&self) -> Items {
        self.items
    }

    pub fn agents(&self) -> Agents {
        self.agents
    }

    /// Agent's ranking, most preferred first. `agent` is 1-based.
    pub fn ranking(&self, agent: u32) -> &[u32] {
        &self.rankings[(agent - 1) as usize]
    }

    pub fn rankings(&self) -> &[Vec<u32>] {
        &self.rankings
    }

    /// 0-based position of `item` in `agent`'s ranking (0 = most preferred).
    pub fn position(&self, agent: u32, item: u32) -> u32 {
        self.positions[(agent - 1) as usize][(item - 1) as usize]
    }
}

/// Additive utilities: one nonnegative rational per (agent, item).
///
/// Per-agent totals are cached at construction, and each row additionally
/// keeps an integer image (the row multiplied by the least common denominator)
/// so that agreeability comparisons run on exact integers.
#[derive(Debug, Clone)]
pub struct AdditiveProfile {
    items: Items,
    agents: Agents,
    utilities: Vec<Vec<BigRational>>,
    totals: Vec<BigRational>,
    scaled: Vec<Vec<BigInt>>,
    scaled_totals: Vec<BigInt>,
}

/// Flags negative entries and stale cached totals. Total: never fails.
pub fn validate_additive_profile(profile: &AdditiveProfile) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = profile.items.count() as usize;
    for (i, row) in profile.utilities.iter().enumerate() {
        let agent = i as u32 + 1;
        if row.len() != m {
            report.push(ValidationIssue::RowLength {
                agent,
                len: row.len(),
                expected: m,
            });
            continue;
        }
        let mut sum = BigRational::zero();
        for (j, u) in row.iter().enumerate() {
            if u.is_negative() {
                report.push(ValidationIssue::NegativeUtility {
                    agent,
                    item: j as u32 + 1,
                });
            }
            sum += u;
        }
        if sum != profile.totals[i] {
            report.push(ValidationIssue::StaleTotal { agent });
        }
    }
    report
}

impl AdditiveProfile {
    /// Validating constructor from rational utility rows.
    pub fn new(utilities: Vec<Vec<BigRational>>) -> Result<Self> {
        let profile = Self::from_parts_unchecked(utilities, None)?;
        let report = validate_additive_profile(&profile);
        if !report.is_valid() {
            return Err(Error::InvalidProfile(report));
        }
        Ok(profile)
    }

    /// Convenience constructor from nonnegative integer rows.
    pub fn from_integers(rows: Vec<Vec<u64>>) -> Result<Self> {
        Self::new(
            rows.into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|v| BigRational::from_integer(BigInt::from(v)))
                        .collect()
                })
                .collect(),
        )
    }

    /// Unchecked constructor that accepts externally supplied cached totals.
    ///
    /// Intended for deserialization pipelines and for exercising
    /// [`validate_additive_profile`]; the solvers assume a valid profile.
    pub fn from_parts_unchecked(
        utilities: Vec<Vec<BigRational>>,
        totals: Option<Vec<BigRational>>,
    ) -> Result<Self> {
        if utilities.is_empty() {
            return Err(Error::NoAgents);
        }
        let m = utilities[0].len() as u32;
        if m == 0 {
            return Err(Error::EmptyUniverse);
        }
        let computed: Vec<BigRational> = utilities
            .iter()
            .map(|row| row.iter().fold(BigRational::zero(), |acc, u| acc + u))
            .collect();
        let totals = totals.unwrap_or_else(|| computed.clone());
        let mut scaled = Vec::with_capacity(utilities.len());
        let mut scaled_totals = Vec::with_capacity(utilities.len());
        for row in &utilities {
            let denom_lcm = row
                .iter()
                .fold(BigInt::one(), |acc, u| acc.lcm(u.denom()));
            let image: Vec<BigInt> = row
                .iter()
                .map(|u| (u * &denom_lcm).to_integer())
                .collect();
            let total = image.iter().fold(BigInt::zero(), |acc, v| acc + v);
            scaled.push(image);
            scaled_totals.push(total);
        }
        Ok(AdditiveProfile {
            items: Items::new(m)?,
            agents: Agents::new(utilities.len() as u32)?,
            utilities,
            totals,
            scaled,
            scaled_totals,
        })
    }

    pub fn items(&self) -> Items {
        self.items
    }

    pub fn agents(&self) -> Agents {
        self.agents
    }

    /// Utility of `agent` (1-based) for `item` (1-based).
    pub fn utility(&self, agent: u32, item: u32) -> &BigRational {
        &self.utilities[(agent - 1) as usize][(item - 1) as usize]
    }

    pub fn utility_rows(&self) -> &[Vec<BigRational>] {
        &self.utilities
    }

    /// Utility of `agent` for a set of items.
    pub fn set_utility(&self, agent: u32, set: &ItemSet) -> BigRational {
        let row = &self.utilities[(agent - 1) as usize];
        set.iter()
            .fold(BigRational::zero(), |acc, x| acc + &row[(x - 1) as usize])
    }

    /// Cached total utility of `agent` over the whole universe.
    pub fn total(&self, agent: u32) -> &BigRational {
        &self.totals[(agent - 1) as usize]
    }

    /// Integer image of the agent's row (row scaled by its denominator lcm).
    pub fn scaled_row(&self, agent: u32) -> &[BigInt] {
        &self.scaled[(agent - 1) as usize]
    }

    /// Total of the integer image row.
    pub fn scaled_total(&self, agent: u32) -> &BigInt {
        &self.scaled_totals[(agent - 1) as usize]
    }

    /// True when every utility is an integer.
    pub fn is_integral(&self) -> bool {
        self.utilities
            .iter()
            .all(|row| row.iter().all(|u| u.is_integer()))
    }
}

/// Snapshot of the query accountant counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryReport {
    /// Number of evaluator invocations (cache misses).
    pub total: u64,
    /// Number of distinct (agent, set) queries seen.
    pub distinct: u64,
}

#[derive(Default)]
struct Accountant {
    total: u64,
    seen: HashMap<(u32, Vec<u32>), f64>,
}

type Evaluator = Box<dyn Fn(u32, &ItemSet) -> Result<f64>>;

/// Black-box set-utility access: `query(agent, set)` returns a utility in
/// `[0, 1]`, with every evaluator invocation counted by the accountant.
///
/// Identical repeated queries are answered from a cache by default; each
/// cache miss increments the total exactly once. The accountant is interior-
/// mutable, so an oracle is owned by a single solver run and never shared.
pub struct ValueOracle {
    items: Items,
    agents: Agents,
    evaluator: Evaluator,
    cache_enabled: bool,
    accountant: RefCell<Accountant>,
}

impl fmt::Debug for ValueOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValueOracle")
            .field("items", &self.items)
            .field("agents", &self.agents)
            .field("cache_enabled", &self.cache_enabled)
            .finish_non_exhaustive()
    }
}

impl ValueOracle {
    pub fn new(items: Items, agents: Agents, evaluator: Evaluator) -> Self {
        ValueOracle {
            items,
            agents,
            evaluator,
            cache_enabled: true,
            accountant: RefCell::new(Accountant::default()),
        }
    }

    /// Oracle that re-invokes the evaluator on repeated queries; the total
    /// counter then exceeds the distinct counter on repeats.
    pub fn without_cache(items: Items, agents: Agents, evaluator: Evaluator) -> Self {
        ValueOracle {
            cache_enabled: false,
            ..Self::new(items, agents, evaluator)
        }
    }

    /// Wraps an additive profile as a value oracle with utilities normalized
    /// to `[0, 1]` (an agent with zero total utility reports 0 everywhere).
    pub fn from_additive(profile: &AdditiveProfile) -> Self {
        let rows: Vec<Vec<f64>> = profile
            .agents()
            .ids()
            .map(|i| {
                let total = profile.total(i);
                profile.items().ids()
                    .map(|j| {
                        if total.is_zero() {
                            0.0
                        } else {
                            ratio_to_f64(&(profile.utility(i, j) / total))
                        }
                    })
                    .collect()
            })
            .collect();
        let evaluator: Evaluator = Box::new(move |agent, set| {
            let row = &rows[(agent - 1) as usize];
            Ok(set.iter().map(|x| row[(x - 1) as usize]).sum())
        });
        ValueOracle::new(profile.items(), profile.agents(), evaluator)
    }

    pub fn items(&self) -> Items {
        self.items
    }

    pub fn agents(&self) -> Agents {
        self.agents
    }

    /// Queries the utility of `agent` for `set`.
    pub fn query(&self, agent: u32, set: &ItemSet) -> Result<f64> {
        if set.universe_size() != self.items.count() {
            return Err(Error::UniverseMismatch {
                set_m: set.universe_size(),
                expected_m: self.items.count(),
            });
        }
        let key = (agent, set.members().to_vec());
        if self.cache_enabled {
            if let Some(&v) = self.accountant.borrow().seen.get(&key) {
                return Ok(v);
            }
        }
        let v = (self.evaluator)(agent, set)?;
        let mut acc = self.accountant.borrow_mut();
        acc.total += 1;
        acc.seen.insert(key, v);
        Ok(v)
    }

    pub fn report(&self) -> QueryReport {
        let acc = self.accountant.borrow();
        QueryReport {
            total: acc.total,
            distinct: acc.seen.len() as u64,
        }
    }

    /// Clears the accountant for a fresh run.
    pub fn reset_accountant(&self) {
        let mut acc = self.accountant.borrow_mut();
        acc.total = 0;
        acc.seen.clear();
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(m: u32, members: &[u32]) -> ItemSet {
        ItemSet::new(Items::new(m).unwrap(), members.to_vec()).unwrap()
    }

    #[test]
    fn item_set_rejects_duplicates_and_out_of_range() {
        let items = Items::new(3).unwrap();
        assert!(matches!(
            ItemSet::new(items, vec![1, 1]),
            Err(Error::DuplicateItem { item: 1 })
        ));
        assert!(matches!(
            ItemSet::new(items, vec![4]),
            Err(Error::ItemOutOfRange { item: 4, m: 3 })
        ));
        assert!(matches!(
            ItemSet::new(items, vec![0]),
            Err(Error::ItemOutOfRange { item: 0, m: 3 })
        ));
    }

    #[test]
    fn complement_and_display() {
        let t = set(5, &[2, 4]);
        assert_eq!(t.complement().members(), &[1, 3, 5]);
        assert_eq!(t.to_string(), "2 4");
        assert_eq!(ItemSet::empty(Items::new(3).unwrap()).to_string(), "");
    }

    #[test]
    fn subset_checks() {
        assert!(set(5, &[2, 4]).is_subset_of(&set(5, &[1, 2, 4])));
        assert!(!set(5, &[2, 4]).is_subset_of(&set(5, &[2, 5])));
        assert!(set(5, &[]).is_subset_of(&set(5, &[])));
    }

    #[test]
    fn validate_ordinal_examples() {
        // identity permutation is valid
        assert!(validate_rankings(3, &[vec![1, 2, 3]]).is_valid());
        // duplicate index 1 flagged
        let report = validate_rankings(3, &[vec![1, 1, 3]]);
        assert!(report
            .issues()
            .contains(&ValidationIssue::RankingDuplicate { agent: 1, item: 1 }));
        // two opposite strict rankings are valid
        assert!(validate_rankings(2, &[vec![2, 1], vec![1, 2]]).is_valid());
    }

    #[test]
    fn validate_additive_examples() {
        let profile = AdditiveProfile::from_integers(vec![vec![1, 2]]).unwrap();
        assert!(validate_additive_profile(&profile).is_valid());
        assert_eq!(profile.total(1), &BigRational::from_integer(3.into()));

        let neg = AdditiveProfile::from_parts_unchecked(
            vec![vec![
                BigRational::from_integer((-1).into()),
                BigRational::from_integer(2.into()),
            ]],
            None,
        )
        .unwrap();
        let report = validate_additive_profile(&neg);
        assert!(report
            .issues()
            .contains(&ValidationIssue::NegativeUtility { agent: 1, item: 1 }));

        let zero = AdditiveProfile::from_integers(vec![vec![0, 0]]).unwrap();
        assert!(validate_additive_profile(&zero).is_valid());
        assert_eq!(zero.total(1), &BigRational::zero());
    }

    #[test]
    fn stale_total_is_flagged() {
        let profile = AdditiveProfile::from_parts_unchecked(
            vec![vec![
                BigRational::from_integer(1.into()),
                BigRational::from_integer(2.into()),
            ]],
            Some(vec![BigRational::from_integer(7.into())]),
        )
        .unwrap();
        let report = validate_additive_profile(&profile);
        assert_eq!(report.issues(), &[ValidationIssue::StaleTotal { agent: 1 }]);
    }

    #[test]
    fn scaled_rows_clear_denominators() {
        let profile = AdditiveProfile::new(vec![vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        ]])
        .unwrap();
        assert_eq!(profile.scaled_row(1), &[BigInt::from(3), BigInt::from(2)]);
        assert_eq!(profile.scaled_total(1), &BigInt::from(5));
        assert!(!profile.is_integral());
    }

    #[test]
    fn oracle_counts_misses_once_and_caches() {
        let items = Items::new(3).unwrap();
        let agents = Agents::new(1).unwrap();
        let oracle = ValueOracle::new(
            items,
            agents,
            Box::new(|_, t| Ok(t.len() as f64 / 3.0)),
        );
        assert_eq!(oracle.report(), QueryReport { total: 0, distinct: 0 });
        let t = set(3, &[1, 2]);
        oracle.query(1, &t).unwrap();
        oracle.query(1, &t).unwrap();
        assert_eq!(oracle.report(), QueryReport { total: 1, distinct: 1 });
        oracle.reset_accountant();
        assert_eq!(oracle.report(), QueryReport { total: 0, distinct: 0 });
    }

    #[test]
    fn uncached_oracle_counts_every_invocation() {
        let items = Items::new(2).unwrap();
        let agents = Agents::new(1).unwrap();
        let oracle = ValueOracle::without_cache(items, agents, Box::new(|_, _| Ok(0.5)));
        let t = set(2, &[1]);
        oracle.query(1, &t).unwrap();
        oracle.query(1, &t).unwrap();
        assert_eq!(oracle.report(), QueryReport { total: 2, distinct: 1 });
    }

    #[test]
    fn oracle_rejects_universe_mismatch() {
        let oracle = ValueOracle::new(
            Items::new(3).unwrap(),
            Agents::new(1).unwrap(),
            Box::new(|_, _| Ok(0.0)),
        );
        assert!(matches!(
            oracle.query(1, &set(4, &[1])),
            Err(Error::UniverseMismatch { set_m: 4, expected_m: 3 })
        ));
    }

    proptest! {
        #[test]
        fn complement_is_involutive(m in 1u32..40, picks in proptest::collection::vec(0u32..40, 0..40)) {
            let members: Vec<u32> = picks.into_iter().map(|v| v % m + 1).collect();
            let mut sorted = members.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let t = set(m, &sorted);
            prop_assert_eq!(t.complement().complement(), t.clone());
            prop_assert_eq!(t.len() + t.complement().len(), m);
        }

        #[test]
        fn set_and_complement_utilities_sum_to_total(
            m in 1u32..8,
            numers in proptest::collection::vec(0u32..20, 8),
            denoms in proptest::collection::vec(1u32..7, 8),
            picks in proptest::collection::vec(0u32..8, 0..8),
        ) {
            let row: Vec<BigRational> = (0..m as usize)
                .map(|j| BigRational::new(numers[j].into(), denoms[j].into()))
                .collect();
            let profile = AdditiveProfile::new(vec![row]).unwrap();
            let mut members: Vec<u32> = picks.into_iter().map(|v| v % m + 1).collect();
            members.sort_unstable();
            members.dedup();
            let t = set(m, &members);
            let total = profile.set_utility(1, &t) + profile.set_utility(1, &t.complement());
            prop_assert_eq!(&total, profile.total(1));
        }
    }
}
