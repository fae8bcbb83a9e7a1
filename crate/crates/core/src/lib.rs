//! Exact computations on type-B deformed Fock spaces: the hyperoctahedral
//! group, deformed symmetrizers and operators, colored set partitions, Wick
//! formulas, the `(q,t)` model, and orthogonal-polynomial identities.

pub mod algebra;
pub mod coxeter;
pub mod error;
pub mod fock;
pub mod moments;
pub mod orthopoly;
pub mod partitions;
pub mod qt;
pub mod verify;

pub use error::{Error, Result};
