//! Miyamoto maps of graded decomposition algebras, the groups they generate,
//! closure and stability, the universal Miyamoto group and its behaviour
//! under morphisms.

mod context;
mod functor;
mod group;
mod universal;

pub use context::{MiyamotoContext, RCharacter, RCharacterDoc};
pub use functor::{check_stability_and_unique_type, induced_group_morphism, GroupMapCheck, InducedMorphism, StabilityReport};
pub use group::{is_miyamoto_closed, miyamoto_group, Closure, ClosureFailure, MiyamotoGroup, DEFAULT_GROUP_CAP};
pub use universal::{central_extension_check, universal_presentation, CentralExtension, UniversalPresentation};

use thiserror::Error;

use crate::decomp::DecompError;
use crate::exactlin::LinAlgError;
use crate::fpgroup::FpError;
use crate::fusion::FusionError;

/// Largest index set and character group a context accepts.
pub const MAX_INDICES: usize = 64;
pub const MAX_CHARACTERS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MiyError {
    #[error("the grading law is not a group law: {0}")]
    NotGroupLaw(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("context too large: {0}")]
    TooLarge(String),
    #[error("Miyamoto map for ({index}, {character}) is not an automorphism")]
    NotAutomorphism { index: String, character: String },
    #[error("not Miyamoto closed: ({index}, {character}) sends {source_index} outside the set of decompositions")]
    NotClosed { index: String, character: String, source_index: String },
    #[error("exact arithmetic required")]
    FloatMode,
    #[error("coset enumeration exhausted after {cosets_defined} cosets")]
    Exhausted { cosets_defined: usize },
    #[error("Miyamoto group exceeds {0} elements")]
    GroupExhausted(usize),
    #[error("no axes available")]
    NoAxes,
    #[error("maps do not intertwine: {0}")]
    Intertwining(String),
    #[error("contexts do not match: {0}")]
    Mismatch(String),
    #[error("universal relators fail in the Miyamoto group")]
    RelatorsFail,
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[cfg(test)]
mod tests;
