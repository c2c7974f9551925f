//! Brute-force combinatorial ground truth: matchings on `[n]` with
//! crossing/nesting statistics, and weighted Motzkin-path enumeration.
//!
//! Nothing here is clever on purpose — transfer matrices and continued
//! fractions are out of scope. This module exists so the closed formulas in
//! `moments` have something slow and independent to be checked against.

pub mod matching;
pub mod motzkin;
pub mod sums;

pub use matching::{
    enumerate_matchings, matching_count, visit_matchings, EnumError, MatchStats, Matching,
};
pub use motzkin::{motzkin_weighted_sum, MotzkinPath, Step};
pub use sums::{
    marked_closer_check, matching_stat_sum_all, matching_sum, refined_identity_check, IdentityCheck,
    DEFAULT_BUDGET,
};
