//! Counting and enumerating the weight-`k` models of a Boolean function given
//! as an ordered binary decision diagram.
//!
//! The main entry points are [`counting::gen_poly`] for the per-weight counts
//! and [`enumerate::method3_enumerate`] for a disjoint union of fixed-weight
//! wildcard rows covering exactly the weight-`k` models.
//!
//! ```
//! use bddk::{counting, enumerate, Bdd};
//!
//! let bdd: Bdd = bddk::fixtures::PSI.parse().unwrap();
//! assert_eq!(counting::count_k(&bdd, 4).unwrap(), 113u32.into());
//! let rows = enumerate::method3_enumerate(&bdd, 4).unwrap();
//! assert_eq!(rows.total(), 113u32.into());
//! ```

pub mod bdd;
pub mod cardset;
pub mod cnf;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod row;
pub mod schedule;
pub mod verify;

pub use bdd::{bits_to_string, parse_bdd, Bdd, Branch, Node, NodeId};
pub use cardset::CardSet;
pub use counting::GenPoly;
pub use error::{Error, Result};
pub use row::{Row, RowSet, Token};
pub use schedule::Schedule;

pub use num_bigint::BigUint;
