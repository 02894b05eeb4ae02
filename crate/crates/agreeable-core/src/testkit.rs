//! Brute-force reference deciders for the source problems of the reduction
//! generators. These are deliberately naive and independent of the solver
//! implementations; the test suites use them as ground truth at desk scale.

use itertools::Itertools;

use crate::reductions::{CnfFormula, SetCoverInstance};

/// Decides balanced two-partition by enumerating every half-size index set:
/// is there a split into two equal-cardinality halves of equal sum?
pub fn balanced_partition_yes(elements: &[u64]) -> bool {
    if elements.len() % 2 != 0 {
        return false;
    }
    let total: u128 = elements.iter().map(|&a| a as u128).sum();
    if total % 2 != 0 {
        return false;
    }
    let half = elements.len() / 2;
    (0..elements.len()).combinations(half).any(|side| {
        let sum: u128 = side.iter().map(|&i| elements[i] as u128).sum();
        sum * 2 == total
    })
}

/// Decides two-partition by enumerating every subset: is there a subset with
/// half the total sum?
pub fn two_partition_yes(elements: &[u64]) -> bool {
    let total: u128 = elements.iter().map(|&a| a as u128).sum();
    if total % 2 != 0 {
        return false;
    }
    debug_assert!(elements.len() < 30);
    (0u64..(1 << elements.len())).any(|mask| {
        let sum: u128 = elements
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &a)| a as u128)
            .sum();
        sum * 2 == total
    })
}

/// Decides satisfiability by enumerating every assignment.
pub fn cnf_satisfiable(formula: &CnfFormula) -> bool {
    let n = formula.num_vars();
    debug_assert!(n < 25);
    (0u64..(1 << n)).any(|assignment| {
        formula.clauses().iter().all(|clause| {
            clause.iter().any(|&lit| {
                let var = lit.unsigned_abs() - 1;
                let value = assignment & (1 << var) != 0;
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        })
    })
}

/// Minimum set-cover size by enumerating every subcollection; `None` when
/// the collection does not cover the ground set.
pub fn set_cover_optimum(instance: &SetCoverInstance) -> Option<u32> {
    let k = instance.subsets().len();
    debug_assert!(k < 25);
    let mut best: Option<u32> = None;
    for mask in 0u64..(1 << k) {
        let picked = mask.count_ones();
        if let Some(b) = best {
            if picked >= b {
                continue;
            }
        }
        let covers = instance.universe().iter().all(|&e| {
            instance
                .subsets()
                .iter()
                .enumerate()
                .any(|(j, s)| mask & (1 << j) != 0 && s.binary_search(&e).is_ok())
        });
        if covers {
            best = Some(picked);
        }
    }
    best
}

/// Naive re-count of the prefix-majority condition along a ranking: for each
/// k, re-scan the top-k prefix from scratch and compare twice the
/// intersection count with k.
pub fn prefix_majority_naive(ranking: &[u32], members: &[u32]) -> bool {
    (1..=ranking.len()).all(|k| {
        let count = ranking[..k]
            .iter()
            .filter(|x| members.contains(x))
            .count();
        2 * count >= k
    })
}
