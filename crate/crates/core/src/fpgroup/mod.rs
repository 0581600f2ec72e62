//! Finitely presented groups, coset enumeration and the finest (abelian)
//! gradings of fusion laws.

mod abelian;
mod collapse;
mod coset;
mod grading;
mod presentation;

pub use abelian::{abelianize, divides, AbelianGroup, AbelianQuotient};
pub use collapse::{collapse_report, reduced_presentation, Collapse, CollapseRule, ReducedPresentation};
pub use coset::{coset_enumerate, CosetGroup, Enumeration};
pub use grading::{abelianized_grading, finest_grading, Grading, GradingGroup, GradingReport, GroupElement, LabelMap};
pub use presentation::{
    cyclic_reduce, finest_grading_presentation, free_reduce, invert_word, Letter, Presentation, PresentationDoc, Word,
};

use thiserror::Error;

/// Default bound on the number of cosets defined during enumeration.
pub const DEFAULT_MAX_COSETS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("cannot parse word token `{0}`")]
    BadToken(String),
    #[error("coset enumeration exhausted after {cosets_defined} cosets")]
    Exhausted { cosets_defined: usize },
    #[error("integer overflow in invariant factors")]
    Overflow,
    #[error("{0}")]
    Internal(String),
}
