//! Association schemes, their Bose–Mesner algebras, Norton algebras on the
//! eigenspaces and the axial decomposition algebras they carry.

mod axioms;
mod bose_mesner;
mod norton;
mod refine;

pub use axioms::{scheme_from_group, AssociationScheme, SchemeDoc};
pub use bose_mesner::{bose_mesner, BoseMesner, MAX_EXACT_POINTS, MAX_FLOAT_POINTS};
pub use norton::{
    norton_algebra, norton_axial_certificate, norton_generalized_decomposition, CertificateSummary, NortonAlgebra,
    NortonCertificate,
};
pub use refine::{refine_with_centralizer, RefinedDecomposition};

use thiserror::Error;

use crate::chartheory::ChartError;
use crate::decomp::DecompError;
use crate::exactlin::LinAlgError;
use crate::fusion::FusionError;
use crate::miyamoto::MiyError;
use crate::permgroup::PermError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("axiom ({axiom}) fails: {detail}")]
    Axiom { axiom: u8, detail: String },
    #[error("{n} points exceed the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("eigensolve failed: {0}")]
    Eigen(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("projection of point {0} is zero")]
    ZeroAxis(usize),
    #[error("scheme is not symmetric; use the generalized decomposition")]
    NotSymmetric,
    #[error("not invariant: {0}")]
    NotInvariant(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Miy(#[from] MiyError),
}

#[cfg(test)]
mod tests;
