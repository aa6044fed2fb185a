//! The three ways of listing `Mod(φ, k)`.
//!
//! - [`method1_sieve`]: read the orthogonal DNF off the diagram and restrict each
//!   path row to weight `k`.
//! - [`method2_enumerate`]: conjoin with the exactly-`k` diagram and stream its
//!   models one by one.
//! - [`method3_enumerate`]: assemble fixed-weight 012g-rows bottom-up along the
//!   cardinality schedule.

mod apply;
mod compress;
mod paths;

pub use apply::{apply_and, exactly_k_bdd, Builder};
pub use compress::{
    method3_enumerate, method3_run, Method3Options, Method3Run, WeightedRowSet,
};
pub use paths::{method1_sieve, method2_enumerate, path_dnf, sieve_row, KModels, PathRows};
