//! Character tables, class functions, representation fusion laws and
//! isotypic decompositions.

mod catalog;
mod center;
mod iso;
mod isotypic;
mod table;

pub use catalog::{catalog_table, table_for_group, table_names};
pub use center::{center_grading_map, CenterGrading, CenterSummary};
pub use iso::find_isomorphism;
pub use isotypic::{
    construct_decomposition_algebra_from_group, isotypic_decomposition, refine_fusion_law, ComponentReport,
    GroupDecomposition, IsotypicComponent, IsotypicDecomposition, IsotypicReport, MatrixRep, MatrixRepDoc,
};
pub use table::{Character, CharacterTable, ClassFunction, ClassInfo};

use thiserror::Error;

use crate::decomp::DecompError;
use crate::exactlin::LinAlgError;
use crate::fpgroup::FpError;
use crate::fusion::FusionError;
use crate::permgroup::PermError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("invalid character table: {0}")]
    InvalidTable(String),
    #[error("table does not match the group: {0}")]
    GroupMismatch(String),
    #[error("class functions of length {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("inner product {0} is not a non-negative integer")]
    NonIntegral(String),
    #[error("not a representation: {0}")]
    NotAHomomorphism(String),
    #[error("generator {0} does not act by an algebra automorphism")]
    NotAutomorphism(usize),
    #[error("module is not semisimple for this table: {0}")]
    NotSemisimple(String),
    #[error("part `{0}` is not invariant")]
    NotInvariant(String),
    #[error("character values are complex; use complex scalars")]
    NeedsComplex,
    #[error("no shipped character table for this group")]
    NoTable,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}
