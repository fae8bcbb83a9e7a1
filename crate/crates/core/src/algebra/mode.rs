use num_traits::{One, Signed};

use super::poly::{PolyScalar, Rational};
use crate::error::{Error, Result};

/// How scalars are realized: fully symbolic, substituted at exact rationals,
/// or substituted at floats (norm and positivity checks only).
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarMode {
    Symbolic,
    RationalAt { alpha: Rational, q: Rational, t: Rational },
    FloatAt { alpha: f64, q: f64, t: f64 },
}

impl ScalarMode {
    /// Type-B paths need `|alpha| < 1` and `|q| < 1`.
    pub fn validate_type_b(&self) -> Result<()> {
        let ok = match self {
            ScalarMode::Symbolic => true,
            ScalarMode::RationalAt { alpha, q, .. } => alpha.abs() < Rational::one() && q.abs() < Rational::one(),
            ScalarMode::FloatAt { alpha, q, .. } => alpha.abs() < 1.0 && q.abs() < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter("type-B parameters need |alpha| < 1 and |q| < 1".into()))
        }
    }

    /// `(q,t)` paths need `|q| < t < 1`.
    pub fn validate_qt(&self) -> Result<()> {
        let ok = match self {
            ScalarMode::Symbolic => true,
            ScalarMode::RationalAt { q, t, .. } => q.abs() < *t && *t < Rational::one(),
            ScalarMode::FloatAt { q, t, .. } => q.abs() < *t && *t < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter("(q,t) parameters need |q| < t < 1".into()))
        }
    }

    /// Exact deformation parameters; float mode computes symbolically and
    /// evaluates afterwards.
    pub fn deform(&self) -> Deform {
        match self {
            ScalarMode::RationalAt { alpha, q, t } => Deform::at(alpha, q, t),
            _ => Deform::symbolic(),
        }
    }
}

/// The deformation parameters as scalars: variables in symbolic mode,
/// constants otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deform {
    pub alpha: PolyScalar,
    pub q: PolyScalar,
    pub t: PolyScalar,
}

impl Deform {
    pub fn symbolic() -> Self {
        Deform { alpha: PolyScalar::alpha(), q: PolyScalar::q(), t: PolyScalar::t() }
    }

    pub fn at(alpha: &Rational, q: &Rational, t: &Rational) -> Self {
        Deform { alpha: alpha.into(), q: q.into(), t: t.into() }
    }

    pub fn with_alpha(mut self, alpha: PolyScalar) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_q(mut self, q: PolyScalar) -> Self {
        self.q = q;
        self
    }

    pub fn with_t(mut self, t: PolyScalar) -> Self {
        self.t = t;
        self
    }

    /// `alpha^a q^b t^c`.
    pub fn weight(&self, a: u32, b: u32, c: u32) -> PolyScalar {
        let mut w = PolyScalar::one();
        if a > 0 {
            w = &w * &self.alpha.pow(a);
        }
        if b > 0 {
            w = &w * &self.q.pow(b);
        }
        if c > 0 {
            w = &w * &self.t.pow(c);
        }
        w
    }

    /// `[n]` evaluated in the current `q`.
    pub fn qint(&self, n: u32) -> PolyScalar {
        (0..n).map(|i| self.q.pow(i)).sum()
    }

    /// `[n]_{q,t}` evaluated in the current `q`, `t`.
    pub fn qtint(&self, n: u32) -> PolyScalar {
        (1..=n).map(|i| &self.q.pow(i - 1) * &self.t.pow(n - i)).sum()
    }
}
