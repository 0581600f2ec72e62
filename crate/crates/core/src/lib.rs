//! Computational toolkit for fusion laws, decomposition algebras and their
//! Miyamoto groups, with the group-theoretic and association-scheme
//! constructions that produce examples.

pub mod exactlin;
pub mod fusion;
pub mod fpgroup;
pub mod permgroup;
pub mod decomp;
pub mod chartheory;
pub mod miyamoto;
pub mod scheme;
pub mod cli;
