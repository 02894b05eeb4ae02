//! Hardness reductions as instance generators.
//!
//! Each map turns a classical decision problem into an additive instance
//! whose minimum agreeable set size encodes the answer:
//!
//! * balanced two-partition -> 2 agents over the multiset, with the second
//!   agent valuing each element at the grand total minus its value;
//! * two-partition -> balanced two-partition, by padding with zeros;
//! * 3-CNF satisfiability (clauses of at least two literals) -> one agent
//!   per clause and per variable over literal items plus a shared item;
//! * set cover (every element covered at least twice) -> one agent per
//!   ground element over subset items plus a special high-value item.
//!
//! The generators are used for adversarial benchmarking and for exhaustive
//! round-trip tests against the brute-force solver at desk scale.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::instance::AdditiveProfile;

/// A multiset of nonnegative integers to be split into two halves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    elements: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(elements: Vec<u64>) -> Self {
        PartitionInstance { elements }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn total(&self) -> u128 {
        self.elements.iter().map(|&a| a as u128).sum()
    }
}

/// Two-agent additive instance over a balanced-partition multiset: agent 1
/// values item i at `a_i`, agent 2 at `M - a_i` with `M` the grand total.
/// The multiset admits a balanced equal-sum split exactly when the instance
/// has an agreeable set of size `|A|/2`.
pub fn from_partition(instance: &PartitionInstance) -> Result<AdditiveProfile> {
    if instance.is_empty() {
        return Err(Error::EmptyPartition);
    }
    if instance.len() % 2 != 0 {
        return Err(Error::OddPartition { len: instance.len() });
    }
    let total = BigInt::from(instance.total());
    let row1: Vec<BigRational> = instance
        .elements()
        .iter()
        .map(|&a| BigRational::from_integer(BigInt::from(a)))
        .collect();
    let row2: Vec<BigRational> = instance
        .elements()
        .iter()
        .map(|&a| BigRational::from_integer(&total - BigInt::from(a)))
        .collect();
    AdditiveProfile::new(vec![row1, row2])
}

/// Pads a two-partition instance with `|B|` zeros, turning it into a
/// balanced two-partition instance with the same yes/no answer.
pub fn balanced_from_2partition(instance: &PartitionInstance) -> PartitionInstance {
    let mut elements = instance.elements().to_vec();
    elements.extend(std::iter::repeat(0).take(instance.len()));
    PartitionInstance::new(elements)
}

/// A CNF formula with at most three literals per clause.
///
/// Literals use the sign convention: `v` is the positive literal of variable
/// `v`, `-v` its negation. Clauses may not contain a variable together with
/// its negation; duplicate literals within a clause are collapsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let mut cleaned = Vec::with_capacity(clauses.len());
        for (idx, clause) in clauses.into_iter().enumerate() {
            let index = idx + 1;
            if clause.is_empty() {
                return Err(Error::MalformedClause {
                    clause: index,
                    reason: "empty clause".into(),
                });
            }
            let mut lits = clause;
            lits.sort_unstable_by_key(|l| (l.unsigned_abs(), *l < 0));
            lits.dedup();
            for lit in &lits {
                if *lit == 0 {
                    return Err(Error::MalformedClause {
                        clause: index,
                        reason: "literal 0".into(),
                    });
                }
                if lit.unsigned_abs() > num_vars {
                    return Err(Error::MalformedClause {
                        clause: index,
                        reason: format!("literal {lit} exceeds the declared {num_vars} variables"),
                    });
                }
            }
            for pair in lits.windows(2) {
                if pair[0].unsigned_abs() == pair[1].unsigned_abs() {
                    return Err(Error::TautologicalClause {
                        clause: index,
                        var: pair[0].unsigned_abs(),
                    });
                }
            }
            if lits.len() > 3 {
                return Err(Error::MalformedClause {
                    clause: index,
                    reason: format!("{} literals; at most 3 allowed", lits.len()),
                });
            }
            cleaned.push(lits);
        }
        Ok(CnfFormula {
            num_vars,
            clauses: cleaned,
        })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// True when every clause holds at least two literals.
    pub fn has_min_two_literals(&self) -> bool {
        self.clauses.iter().all(|c| c.len() >= 2)
    }

    /// Replaces every unit clause `(l)` by `(l v f) ^ (l v -f)` over a fresh
    /// variable `f`, preserving satisfiability and guaranteeing at least two
    /// literals per clause.
    pub fn preprocess(&self) -> CnfFormula {
        let mut num_vars = self.num_vars;
        let mut clauses = Vec::with_capacity(self.clauses.len());
        for clause in &self.clauses {
            if clause.len() == 1 {
                num_vars += 1;
                let fresh = num_vars as i32;
                clauses.push(vec![clause[0], fresh]);
                clauses.push(vec![clause[0], -fresh]);
            } else {
                clauses.push(clause.clone());
            }
        }
        CnfFormula { num_vars, clauses }
    }
}

/// Additive instance of a preprocessed 3-CNF formula: one agent per clause
/// and one per variable, over one item per literal plus a shared item that
/// everyone values at 1. Item `2i-1` is the positive literal of variable i,
/// item `2i` its negation, and item `2n'+1` is the shared item. The formula
/// is satisfiable exactly when the instance has an agreeable set of size
/// `n' + 1 = (m+1)/2`.
pub fn from_3sat(formula: &CnfFormula) -> Result<AdditiveProfile> {
    for (idx, clause) in formula.clauses().iter().enumerate() {
        if clause.len() < 2 {
            return Err(Error::MalformedClause {
                clause: idx + 1,
                reason: "fewer than 2 literals; apply preprocess() first".into(),
            });
        }
    }
    let n_vars = formula.num_vars() as usize;
    let m = 2 * n_vars + 1;
    let item_of = |lit: i32| -> usize {
        let var = lit.unsigned_abs() as usize;
        if lit > 0 {
            2 * var - 2
        } else {
            2 * var - 1
        }
    };
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(formula.clauses().len() + n_vars);
    for clause in formula.clauses() {
        let mut row = vec![0u64; m];
        row[m - 1] = 1;
        for &lit in clause {
            row[item_of(lit)] = 1;
        }
        rows.push(row);
    }
    for var in 1..=n_vars {
        let mut row = vec![0u64; m];
        row[m - 1] = 1;
        row[2 * var - 2] = 1;
        row[2 * var - 1] = 1;
        rows.push(row);
    }
    AdditiveProfile::from_integers(rows)
}

/// A set cover instance: a ground set and a collection (with multiplicity)
/// of subsets. Every ground element must appear in at least two subsets;
/// that keeps the special item of the reduction below non-dominant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    universe: Vec<u32>,
    subsets: Vec<Vec<u32>>,
}

impl SetCoverInstance {
    pub fn new(universe: Vec<u32>, subsets: Vec<Vec<u32>>) -> Result<Self> {
        let mut universe = universe;
        universe.sort_unstable();
        universe.dedup();
        let mut subsets = subsets;
        for (idx, subset) in subsets.iter_mut().enumerate() {
            subset.sort_unstable();
            subset.dedup();
            for &e in subset.iter() {
                if universe.binary_search(&e).is_err() {
                    return Err(Error::ElementOutsideGroundSet {
                        subset: idx + 1,
                        element: e,
                    });
                }
            }
        }
        for &e in &universe {
            let degree = subsets.iter().filter(|s| s.binary_search(&e).is_ok()).count();
            if degree < 2 {
                return Err(Error::CoverageDegree { element: e, degree });
            }
        }
        Ok(SetCoverInstance { universe, subsets })
    }

    pub fn universe(&self) -> &[u32] {
        &self.universe
    }

    pub fn subsets(&self) -> &[Vec<u32>] {
        &self.subsets
    }

    /// Number of subsets containing the element (with multiplicity).
    pub fn degree(&self, element: u32) -> usize {
        self.subsets
            .iter()
            .filter(|s| s.binary_search(&element).is_ok())
            .count()
    }
}

/// Additive instance of a set cover problem: one agent per ground element,
/// one item per subset plus a final special item valued `degree - 1` by each
/// element's agent. The minimum agreeable set has size exactly one more than
/// the minimum cover.
pub fn from_setcover(instance: &SetCoverInstance) -> Result<AdditiveProfile> {
    let k = instance.subsets().len();
    let rows: Vec<Vec<u64>> = instance
        .universe()
        .iter()
        .map(|&e| {
            let mut row = vec![0u64; k + 1];
            for (j, subset) in instance.subsets().iter().enumerate() {
                if subset.binary_search(&e).is_ok() {
                    row[j] = 1;
                }
            }
            row[k] = instance.degree(e) as u64 - 1;
            row
        })
        .collect();
    AdditiveProfile::from_integers(rows)
}
