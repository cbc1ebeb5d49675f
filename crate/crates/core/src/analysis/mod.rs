//! The e-Hamming metric, error balls, redundancy bounds, and exhaustive
//! ground-truth checks on tiny instances.

mod bounds;
mod exhaustive;
mod metric;

pub use bounds::{
    bound_2caecc_thm6, bound_report, redundancy_cor2, redundancy_cor4, sp_bound_thm3,
    sp_bound_thm4, BoundReport, SphereBound, Thm4Bound, Thm6Bound,
};
pub use exhaustive::{
    all_words, balls_disjoint, channel_outputs, enumerate_code, greedy_max_code,
    verify_caecc_exhaustive, verify_lemma4, Collision, Lemma4Report,
};
pub use metric::{asym_ball, ball_eh, ball_eh_size, code_distance, d_eh, Distance};

/// Largest set any enumerator here will materialise.
pub const ENUMERATION_LIMIT: u64 = 4_000_000;
