//! The truncated algebraic Fock space and its operators.

pub mod ops;
pub mod space;
pub mod symmetrizer;

pub use ops::{apply_operator, vacuum_expectation, OperatorSpec};
pub use space::{FockVector, SpaceSpec, Word};
pub use symmetrizer::{inner, r_operator, symmetrizer, InnerFlavor};
