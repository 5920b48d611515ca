//! Finite abstract polytopes as ranked posets: axiom validation, flag graphs,
//! automorphism groups computed by flag-map extension, two-orbit symmetry
//! classification, distinguished generating sets and stabilizer subgroups,
//! and reconstruction of the partial order from coset data alone.

pub mod analysis;
pub mod apf;
pub mod catalog;
pub mod cli;
pub mod classify;
pub mod error;
pub mod flags;
pub mod generators;
pub mod group;
pub mod poset;
pub mod reconstruct;
pub mod stabilizers;

pub use analysis::Analysis;
pub use error::{Error, Result};
pub use poset::{dual, is_isomorphic, validate_polytope, RankedPoset};
