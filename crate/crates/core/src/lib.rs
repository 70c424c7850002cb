//! Score sequences of generalized `(a,b,n)`-tournaments.
//!
//! In an `(a,b,n)`-tournament every pair of the `n` players shares between
//! `a` and `b` points. Given the points each player won (the score
//! sequence), this crate decides realizability, computes
//!
//! * `e`: the least possible largest single match result,
//! * `f`: the least possible largest pair total,
//! * `g`: the greatest possible smallest pair total,
//!
//! and builds point matrices witnessing them, including one that attains `f`
//! and `g` at the same time. The [`oracle`] module cross-checks all of it by
//! exhaustive enumeration on small instances.

pub mod analysis;
pub mod construct;
pub mod domain;
pub mod error;
pub mod oracle;

pub use analysis::{
    bound_e, extremal_summary, f_search_interval, interval_test, loss_table, max_g, max_g_bisect,
    min_f, min_f_linear, min_f_quadratic, prefix_tables, LossTable, PrefixTables,
};
pub use construct::{
    mini_max, naive_construct, pigeonhole_construct, reconstruct, score_slicing, SlicingState,
};
pub use domain::{
    matrix_stats, verify_realization, verify_scores, ExtremalSummary, IntervalParams, MatrixStats,
    Permutation, PointMatrix, ScoreSequence, VerificationReport,
};
pub use error::{Error, Result};
pub use oracle::{enumerate_extremes, landau_test, moon_test, sweep, Oracle, OracleResult};
