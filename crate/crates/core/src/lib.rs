//! Finite permutation groups and subgroup-embedding predicates.
//!
//! The crate is organised bottom-up: [`perm`] and [`group`] provide
//! permutations and a stabilizer-chain group engine, [`subgroup`] and
//! [`lattice`] the subgroup operators, [`structure`] the characteristic
//! subgroups and class tests, [`embedding`] the closure predicates,
//! [`catalog`] named groups and corpora, and [`verify`] the statement checks.

pub mod catalog;
pub mod embedding;
pub mod error;
pub mod group;
pub mod lattice;
pub mod limits;
pub mod perm;
pub mod structure;
pub mod subgroup;
pub mod verify;

pub use error::{GroupError, Result};
pub use group::PermGroup;
pub use limits::Limits;
pub use perm::{Permutation, Point};
