//! Exact linear algebra over ℤ and ℚ.

mod rank;
mod snf;

pub use rank::{bareiss_rank, rank, IncrementalRank};
pub use snf::{invariant_factors, smith_normal_form, SnfResult};
