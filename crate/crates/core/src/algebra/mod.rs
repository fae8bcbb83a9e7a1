//! Exact scalars and linear algebra.

pub mod matrix;
pub mod mode;
pub mod poly;

pub use matrix::{dot, PolyMatrix, RMatrix, RVector};
pub use mode::{Deform, ScalarMode};
pub use poly::{
    fmt_rational, parse_rational, qint, qtint, rat, rat_int, rational_to_f64, Monomial, PolyScalar, Rational, Var,
};
