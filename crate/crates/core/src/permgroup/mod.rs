//! Permutation groups: enumeration, conjugacy classes and class fusion laws,
//! orbitals and induced actions, and a small catalog of groups.

mod action;
mod catalog;
mod group;
mod perm;

pub use action::{k_subsets, Orbitals};
pub use catalog::{catalog, catalog_names, catalog_group};
pub use group::{ConjugacyClasses, PermGroup, PermGroupDoc, DEFAULT_ELEMENT_CAP};
pub use perm::Perm;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("{0} is not an element of the group")]
    NotInGroup(String),
    #[error("action is not transitive")]
    NotTransitive,
    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),
    #[error("cannot parse group: {0}")]
    Parse(String),
    #[error("{0}")]
    Internal(String),
}
