//! Algebras given by structure constants, decompositions obeying a fusion
//! law, axial structure, and the categorical constructions on decomposition
//! algebras: pushforward, products, equalizers, ideals and quotients.

mod algebra;
mod category;
pub mod constructions;
mod decomposition;

pub use algebra::{Algebra, AlgebraDoc};
pub use category::{
    decomposition_ideal_check, equalizer, initial, product, pushforward, quotient, terminal, DecMorphism, Equalizer,
    IdealVerdict, Product, Quotient,
};
pub use decomposition::{
    AxisViolation, Axes, Decomposition, DecompositionAlgebra, DecompositionAlgebraDoc, FusionViolation, VerifyReport,
};

use thiserror::Error;

use crate::exactlin::LinAlgError;
use crate::fusion::FusionError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("duplicate index `{0}`")]
    DuplicateIndex(String),
    #[error("unknown index `{0}`")]
    UnknownIndex(String),
    #[error("fusion laws differ")]
    LawMismatch,
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("subspace is not closed under the product: {0}")]
    NotClosed(String),
    #[error("not a decomposition ideal")]
    NotDecompositionIdeal,
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[cfg(test)]
mod tests;
