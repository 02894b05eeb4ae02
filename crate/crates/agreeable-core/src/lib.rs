//! Minimum-size agreeable item sets for groups of agents.
//!
//! A set of items is *agreeable* to an agent when the agent values it at
//! least as much as the complement set. This crate computes small agreeable
//! sets under three preference models:
//!
//! * strict ordinal rankings over single items ([`ordinal`]): a randomized
//!   and a deterministic solver, both returning sets that are agreeable
//!   under every responsive preference consistent with the rankings;
//! * black-box set utilities ([`oracle`]): a covering-design search with
//!   query accounting, plus the planted threshold oracle family used for
//!   adversarial benchmarking;
//! * additive utilities ([`additive`]): exact solvers (exhaustive and
//!   pseudo-polynomial dynamic programming) and a greedy covering
//!   approximation.
//!
//! [`reductions`] turns balanced-partition, satisfiability, and set-cover
//! instances into additive instances for testing and benchmarking, and
//! [`gen`] provides seeded random generators. All additive arithmetic is
//! exact (rationals with cached integer images); agreeability checks are
//! never performed in floating point.

pub mod additive;
pub mod agreeability;
pub mod error;
pub mod gen;
pub mod instance;
pub mod oracle;
pub mod ordinal;
pub mod reductions;
pub mod testkit;
mod util;

pub use error::{Error, Result};
pub use instance::{
    AdditiveProfile, Agents, ItemSet, Items, OrdinalProfile, QueryReport, ValidationIssue,
    ValidationReport, ValueOracle,
};
