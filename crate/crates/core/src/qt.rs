//! The `(q,t)`-deformed Fock space: the rescaled symmetrizer, its operators,
//! and the `q^{rc} t^{rarc}` Wick sum.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{dot, Deform, PolyMatrix, PolyScalar, RMatrix, RVector, Rational};
use crate::error::{Error, Result};
use crate::fock::ops::{level_matrix, vacuum_expectation, OperatorSpec};
use crate::fock::space::{FockVector, SpaceSpec};
use crate::fock::symmetrizer::weighted_group_action;
use crate::partitions::{colored_stats, enumerate_uncolored, PartitionFilter};

/// A trivially involuted space for the `(q,t)` model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QtSpec {
    space: SpaceSpec,
}

impl QtSpec {
    pub fn new(d: usize, truncation: usize) -> Result<Self> {
        Ok(QtSpec { space: SpaceSpec::trivial(d, truncation)? })
    }

    pub fn from_space(space: SpaceSpec) -> Result<Self> {
        if space.involution() != &RMatrix::identity(space.dim()) {
            return Err(Error::Parameter("the (q,t) model needs the trivial involution".into()));
        }
        Ok(QtSpec { space })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }
}

fn binom2(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// `P̃^{(n)} v = Σ_{σ ∈ S(n)} q^{l2(σ)} t^{C(n,2) - l2(σ)} σ v`.
pub fn apply_qt_symmetrizer(n: usize, v: &FockVector, deform: &Deform) -> Result<FockVector> {
    let top = binom2(n);
    weighted_group_action(
        n,
        v,
        |rec| {
            if rec.l1 > 0 {
                PolyScalar::zero()
            } else {
                deform.weight(0, rec.l2, top - rec.l2)
            }
        },
    )
}

/// Matrix of `P̃^{(n)}_{q,t}`.
pub fn qt_symmetrizer(n: usize, spec: &QtSpec, deform: &Deform) -> Result<PolyMatrix> {
    let space = spec.space();
    if n > space.truncation() {
        return Err(Error::OutOfRange(format!("level {n} above truncation {}", space.truncation())));
    }
    if space.dim().checked_pow(n as u32).is_none_or(|s| s > crate::fock::symmetrizer::MAX_LEVEL_SIZE) {
        return Err(Error::ResourceLimit(format!("d^n = {}^{n} too large", space.dim())));
    }
    if n == 0 {
        return Ok(PolyMatrix::identity(1));
    }
    level_matrix(&Arc::new(space.clone()), n, n, |v| apply_qt_symmetrizer(n, v, deform))
}

/// `φ̃(Y(x_n) ⋯ Y(x_1))` computed on the Fock space; `xs[i-1] = x_i`.
pub fn qt_operator_moment(xs: &[RVector], ts: &[RMatrix], spec: &QtSpec, deform: &Deform) -> Result<PolyScalar> {
    check_data(xs, ts, spec)?;
    let ops: Vec<OperatorSpec> =
        (0..xs.len()).rev().map(|i| OperatorSpec::qt_y(xs[i].clone(), ts[i].clone())).collect::<Result<_>>()?;
    vacuum_expectation(&ops, &spec.space().with_truncation(xs.len().max(1)), deform)
}

fn check_data(xs: &[RVector], ts: &[RMatrix], spec: &QtSpec) -> Result<()> {
    let d = spec.space().dim();
    if xs.len() != ts.len() {
        return Err(Error::Dimension("xs and Ts must have equal lengths".into()));
    }
    if xs.iter().any(|x| x.len() != d) || ts.iter().any(|t| t.dim() != d) {
        return Err(Error::Dimension(format!("vectors and matrices must have dimension {d}")));
    }
    Ok(())
}

/// `Σ_{π ∈ P_{≥2}(n)} q^{rc} t^{rarc} Π_B <x_max, T_{x_{i_{m-1}}} ⋯ T_{x_{i_2}} x_min>`.
pub fn qt_wick(xs: &[RVector], ts: &[RMatrix], spec: &QtSpec, deform: &Deform) -> Result<PolyScalar> {
    check_data(xs, ts, spec)?;
    let n = xs.len();
    if n > crate::moments::MAX_WICK_N {
        return Err(Error::ResourceLimit(format!("qt_wick needs n ≤ {}", crate::moments::MAX_WICK_N)));
    }
    let mut acc = PolyScalar::zero();
    for p in enumerate_uncolored(n, PartitionFilter::NoSingletons)? {
        let k: Rational = p
            .blocks()
            .iter()
            .map(|b| {
                let mut v = xs[b.min() - 1].clone();
                for &e in &b.elems[1..b.len() - 1] {
                    v = ts[e - 1].apply(&v);
                }
                dot(&xs[b.max() - 1], &v)
            })
            .product();
        if k.is_zero() {
            continue;
        }
        let s = colored_stats(&p);
        acc += deform.weight(0, s.rc as u32, s.rarc as u32).scale(&k);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};
    use crate::fock::ops::{qt_annihilate, qt_gauge};
    use crate::fock::symmetrizer::symmetrizer;

    #[test]
    fn symmetrizer_examples() {
        let d = Deform::symbolic();
        let spec = QtSpec::new(1, 3).unwrap();
        assert_eq!(qt_symmetrizer(1, &spec, &d).unwrap(), PolyMatrix::identity(1));
        assert_eq!(qt_symmetrizer(2, &spec, &d).unwrap().get(0, 0), &"t + q".parse().unwrap());
        let spec2 = QtSpec::new(2, 3).unwrap();
        let at_t1 = d.clone().with_t(PolyScalar::one());
        let no_alpha = d.with_alpha(PolyScalar::zero());
        for n in 0..=3 {
            assert_eq!(qt_symmetrizer(n, &spec2, &at_t1).unwrap(), symmetrizer(n, spec2.space(), &no_alpha).unwrap());
        }
    }

    #[test]
    fn t_equal_one_matches_alpha_zero_operators() {
        let spec = QtSpec::new(2, 3).unwrap();
        let s = Arc::new(spec.space().clone());
        let d = Deform::symbolic().with_t(PolyScalar::one()).with_alpha(PolyScalar::zero());
        let x = vec![rat(1, 2), rat(-1, 1)];
        let t = RMatrix::from_rows(vec![vec![rat_int(2), rat_int(1)], vec![rat_int(1), rat(1, 3)]]).unwrap();
        for w in s.level_words(2) {
            let v = FockVector::basis(s.clone(), w);
            assert_eq!(qt_annihilate(&x, &v, &d), crate::fock::ops::annihilate(&x, &v, &d));
            assert_eq!(qt_gauge(&t, &v, &d), crate::fock::ops::gauge(&t, &v, &d));
        }
    }

    #[test]
    fn wick_examples() {
        let spec = QtSpec::new(1, 5).unwrap();
        let d = Deform::symbolic().with_q(PolyScalar::zero());
        let xs = vec![vec![rat_int(1)]; 5];
        let ts = vec![RMatrix::identity(1); 5];
        assert_eq!(qt_wick(&xs, &ts, &spec, &d).unwrap(), "t^2 + 2*t + 3".parse().unwrap());
        assert_eq!(qt_operator_moment(&xs, &ts, &spec, &d).unwrap(), "t^2 + 2*t + 3".parse().unwrap());
        let spec2 = QtSpec::new(2, 2).unwrap();
        let xs2 = vec![vec![rat(1, 2), rat_int(3)], vec![rat_int(-1), rat(2, 5)]];
        let ts2 = vec![RMatrix::identity(2); 2];
        let got = qt_wick(&xs2, &ts2, &spec2, &Deform::symbolic()).unwrap();
        assert_eq!(got, PolyScalar::from(dot(&xs2[1], &xs2[0])));
    }

    #[test]
    fn rejects_nontrivial_involution() {
        let s = SpaceSpec::with_signature(&[1, -1], 2).unwrap();
        assert!(QtSpec::from_space(s).is_err());
    }
}
