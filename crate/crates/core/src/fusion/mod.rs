//! Fusion laws: finite sets with a product into subsets, their distinguished
//! elements, morphisms, products, unions and group fusion laws.

mod law;
mod morphism;

pub use law::{ElementKind, FusionEntry, FusionLaw, FusionLawDoc};
pub use morphism::{FusionMorphism, FusionMorphismDoc};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("map is not a fusion morphism: image of {x} * {y} is not contained in the product of the images")]
    NotAMorphism { x: String, y: String },
    #[error("map has {got} entries, expected {expected}")]
    MapArity { got: usize, expected: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
}

/// The standard Jordan fusion law on `{e, z, h}`.
pub fn jordan_law() -> FusionLaw {
    FusionLaw::from_labels(
        &["e", "z", "h"],
        &[
            ("e", "e", &["e"]),
            ("e", "h", &["h"]),
            ("z", "z", &["z"]),
            ("z", "h", &["h"]),
            ("h", "e", &["h"]),
            ("h", "z", &["h"]),
            ("h", "h", &["e", "z"]),
        ],
    )
    .expect("static law")
}

/// The Ising fusion law on `{e, z, q, t}`.
pub fn ising_law() -> FusionLaw {
    FusionLaw::from_labels(
        &["e", "z", "q", "t"],
        &[
            ("e", "e", &["e"]),
            ("e", "q", &["q"]),
            ("e", "t", &["t"]),
            ("z", "z", &["z"]),
            ("z", "q", &["q"]),
            ("z", "t", &["t"]),
            ("q", "e", &["q"]),
            ("q", "z", &["q"]),
            ("q", "q", &["e", "z"]),
            ("q", "t", &["t"]),
            ("t", "e", &["t"]),
            ("t", "z", &["t"]),
            ("t", "q", &["t"]),
            ("t", "t", &["e", "z", "q"]),
        ],
    )
    .expect("static law")
}

/// The law on `labels` with every product empty.
pub fn empty_law(labels: &[&str]) -> FusionLaw {
    FusionLaw::from_labels(labels, &[]).expect("distinct labels")
}

/// Group fusion law of the cyclic group `Z/n`, elements labelled `0..n`.
pub fn cyclic_group_law(n: usize) -> FusionLaw {
    assert!(n >= 1);
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FusionLaw::group_law(labels, &table).expect("cyclic group")
}
