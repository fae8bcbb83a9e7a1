//! The type-B symmetrizer `P^{(n)}`, its factor `R^{(n)}`, the deformed
//! inner products, and float-mode norm and positivity checks.

use std::sync::Arc;

use nalgebra::DMatrix;

use super::ops::{act_sigma, act_word, annihilate, annihilate_free, gauge, level_matrix};
use super::space::{FockVector, SpaceSpec};
use crate::algebra::matrix::{min_eigenvalue, spectral_norm, weighted_operator_norm};
use crate::algebra::{Deform, PolyMatrix, PolyScalar, RMatrix, RVector};
use crate::coxeter::{enumerate_group, GroupElementRecord};
use crate::error::{Error, Result};

pub const MAX_LEVEL_SIZE: usize = 4096;

fn guard(space: &SpaceSpec, n: usize) -> Result<()> {
    if n > space.truncation() {
        return Err(Error::OutOfRange(format!("level {n} above truncation {}", space.truncation())));
    }
    if space.dim().checked_pow(n as u32).is_none_or(|s| s > MAX_LEVEL_SIZE) {
        return Err(Error::ResourceLimit(format!("d^n = {}^{n} exceeds {MAX_LEVEL_SIZE}", space.dim())));
    }
    Ok(())
}

/// `Σ_σ weight(σ) σ` applied to a homogeneous level-`n` vector.
pub fn weighted_group_action(
    n: usize,
    v: &FockVector,
    mut weight: impl FnMut(&GroupElementRecord) -> PolyScalar,
) -> Result<FockVector> {
    if n == 0 {
        return Ok(v.clone());
    }
    let table = enumerate_group(n)?;
    let mut out = FockVector::zero(v.space().clone());
    for rec in table.elements() {
        let w = weight(rec);
        if w.is_zero() {
            continue;
        }
        out = &out + &act_sigma(rec, v)?.scale(&w);
    }
    Ok(out)
}

/// `P^{(n)} v` for a level-`n` vector.
pub fn apply_symmetrizer(n: usize, v: &FockVector, deform: &Deform) -> Result<FockVector> {
    weighted_group_action(n, v, |rec| deform.weight(rec.l1, rec.l2, 0))
}

/// Matrix of `P^{(n)}_{α,q} = Σ_{σ ∈ Σ(n)} α^{l1(σ)} q^{l2(σ)} σ`.
pub fn symmetrizer(n: usize, space: &SpaceSpec, deform: &Deform) -> Result<PolyMatrix> {
    guard(space, n)?;
    if n == 0 {
        return Ok(PolyMatrix::identity(1));
    }
    let sp = Arc::new(space.clone());
    level_matrix(&sp, n, n, |v| apply_symmetrizer(n, v, deform))
}

/// The generator words making up `R^{(n)}` with their weights, each word in
/// operator-product order.
pub fn r_operator_terms(n: usize, deform: &Deform) -> Vec<(PolyScalar, Vec<usize>)> {
    let mut terms = vec![(PolyScalar::one(), Vec::new())];
    // q^k π_{n-1} ⋯ π_{n-k}
    for k in 1..n {
        terms.push((deform.q.pow(k as u32), ((n - k)..n).rev().collect()));
    }
    // α q^{n-1} π_{n-1} ⋯ π_1 π_0 (1 + Σ_k q^k π_1 ⋯ π_k)
    let head: Vec<usize> = (0..n).rev().collect();
    let base = &deform.alpha * &deform.q.pow(n as u32 - 1);
    terms.push((base.clone(), head.clone()));
    for k in 1..n {
        let mut w = head.clone();
        w.extend(1..=k);
        terms.push((&base * &deform.q.pow(k as u32), w));
    }
    terms
}

/// `R^{(n)} v`.
pub fn apply_r_operator(n: usize, v: &FockVector, deform: &Deform) -> Result<FockVector> {
    let mut out = FockVector::zero(v.space().clone());
    for (c, w) in r_operator_terms(n, deform) {
        out = &out + &act_word(&w, v)?.scale(&c);
    }
    Ok(out)
}

/// Matrix of `R^{(n)}_{α,q}` assembled from its generator words.
pub fn r_operator(n: usize, space: &SpaceSpec, deform: &Deform) -> Result<PolyMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange("R^(n) needs n ≥ 1".into()));
    }
    guard(space, n)?;
    let sp = Arc::new(space.clone());
    level_matrix(&sp, n, n, |v| apply_r_operator(n, v, deform))
}

/// Matrix of `b(x)` from level `n` to `n - 1`.
pub fn annihilator_matrix(n: usize, x: &RVector, space: &SpaceSpec, deform: &Deform) -> Result<PolyMatrix> {
    guard(space, n)?;
    let sp = Arc::new(space.clone());
    level_matrix(&sp, n, n - 1, |v| Ok(annihilate(x, v, deform)))
}

/// Matrix of the free right annihilator `r(x)` from level `n` to `n - 1`.
pub fn free_annihilator_matrix(n: usize, x: &RVector, space: &SpaceSpec) -> Result<PolyMatrix> {
    guard(space, n)?;
    let sp = Arc::new(space.clone());
    level_matrix(&sp, n, n - 1, |v| Ok(annihilate_free(x, v)))
}

/// Matrix of `p(T)` on level `n`.
pub fn gauge_matrix(n: usize, t: &RMatrix, space: &SpaceSpec, deform: &Deform) -> Result<PolyMatrix> {
    guard(space, n)?;
    let sp = Arc::new(space.clone());
    level_matrix(&sp, n, n, |v| Ok(gauge(t, v, deform)))
}

/// Which bilinear form to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerFlavor {
    /// `δ_{m,n} Π <x_i, y_i>`.
    ZeroZero,
    /// `<u, P_{α,q} v>_{0,0}`.
    AlphaQ,
    /// `<u, P̃_{q,t} v>_{0,0}`.
    Qt,
}

fn pairing(u: &FockVector, v: &FockVector) -> PolyScalar {
    u.terms()
        .filter_map(|(w, c)| {
            let other = v.coeff(w);
            (!other.is_zero()).then(|| c * &other)
        })
        .sum()
}

/// The deformed inner product, computed level by level.
pub fn inner(u: &FockVector, v: &FockVector, flavor: InnerFlavor, deform: &Deform) -> Result<PolyScalar> {
    if u.space().as_ref() != v.space().as_ref() {
        return Err(Error::Dimension("inner product of vectors from different spaces".into()));
    }
    if flavor == InnerFlavor::ZeroZero {
        return Ok(pairing(u, v));
    }
    let top = v.max_level().unwrap_or(0).max(u.max_level().unwrap_or(0));
    let mut acc = PolyScalar::zero();
    for n in 0..=top {
        let vn = v.level(n);
        if vn.is_zero() || u.level(n).is_zero() {
            continue;
        }
        let pv = match flavor {
            InnerFlavor::AlphaQ => apply_symmetrizer(n, &vn, deform)?,
            InnerFlavor::Qt => crate::qt::apply_qt_symmetrizer(n, &vn, deform)?,
            InnerFlavor::ZeroZero => unreachable!(),
        };
        acc += pairing(u, &pv);
    }
    Ok(acc)
}

/// Float view of `P^{(n)}` at `(α, q)`.
pub fn symmetrizer_f64(n: usize, space: &SpaceSpec, alpha: f64, q: f64) -> Result<DMatrix<f64>> {
    Ok(symmetrizer(n, space, &Deform::symbolic())?.eval_f64(alpha, q, 0.0))
}

/// Smallest eigenvalue of the level-`n` Gram matrix `P^{(n)}` at `(α, q)`.
pub fn gram_min_eigenvalue(n: usize, space: &SpaceSpec, alpha: f64, q: f64) -> Result<f64> {
    Ok(min_eigenvalue(&symmetrizer_f64(n, space, alpha, q)?))
}

/// `||R^{(n)}||` in the undeformed norm at `(α, q)`.
pub fn r_operator_norm(n: usize, space: &SpaceSpec, alpha: f64, q: f64) -> Result<f64> {
    Ok(spectral_norm(&r_operator(n, space, &Deform::symbolic())?.eval_f64(alpha, q, 0.0)))
}

/// `(1 + |α||q|^{n-1}) [n]_{|q|}`.
pub fn r_norm_bound(n: usize, alpha: f64, q: f64) -> f64 {
    let qa = q.abs();
    let qint: f64 = (0..n).map(|i| qa.powi(i as i32)).sum();
    (1.0 + alpha.abs() * qa.powi(n as i32 - 1)) * qint
}

/// `||p(T)||_{α,q}` restricted to level `n`.
pub fn gauge_norm(n: usize, t: &RMatrix, space: &SpaceSpec, alpha: f64, q: f64) -> Result<f64> {
    let g = gauge_matrix(n, t, space, &Deform::symbolic())?.eval_f64(alpha, q, 0.0);
    let gram = symmetrizer_f64(n, space, alpha, q)?;
    weighted_operator_norm(&g, &gram)
        .ok_or_else(|| Error::Parameter(format!("Gram matrix at level {n} is not positive definite")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    fn poly(s: &str) -> PolyScalar {
        s.parse().unwrap()
    }

    #[test]
    fn symmetrizer_examples() {
        let d = Deform::symbolic();
        let s1 = SpaceSpec::with_signature(&[1], 3).unwrap();
        assert_eq!(symmetrizer(0, &s1, &d).unwrap(), PolyMatrix::identity(1));
        assert_eq!(symmetrizer(1, &s1, &d).unwrap().get(0, 0), &poly("1 + a"));
        assert_eq!(symmetrizer(2, &s1, &d).unwrap().get(0, 0), &poly("1 + a + q + 2*a*q + a^2*q + a*q^2 + a^2*q^2"));
        let s2 = SpaceSpec::with_signature(&[1, -1], 3).unwrap();
        let p1 = symmetrizer(1, &s2, &d).unwrap();
        assert_eq!(p1.get(0, 0), &poly("1 + a"));
        assert_eq!(p1.get(1, 1), &poly("1 - a"));
        assert!(p1.get(0, 1).is_zero());
    }

    #[test]
    fn r_operator_level_one() {
        let d = Deform::symbolic();
        let s1 = SpaceSpec::with_signature(&[1], 3).unwrap();
        assert_eq!(r_operator(1, &s1, &d).unwrap().get(0, 0), &poly("1 + a"));
    }

    #[test]
    fn inner_examples() {
        let d = Deform::symbolic();
        let s = Arc::new(SpaceSpec::with_signature(&[1], 3).unwrap());
        let om = FockVector::vacuum(s.clone());
        for f in [InnerFlavor::ZeroZero, InnerFlavor::AlphaQ, InnerFlavor::Qt] {
            assert_eq!(inner(&om, &om, f, &d).unwrap(), PolyScalar::one());
        }
        let x = FockVector::basis(s.clone(), vec![0]);
        assert_eq!(inner(&x, &x, InnerFlavor::AlphaQ, &d).unwrap(), poly("1 + a"));
        let xx = FockVector::basis(s.clone(), vec![0, 0]);
        assert_eq!(inner(&xx, &xx, InnerFlavor::AlphaQ, &d).unwrap(), poly("1 + a") * poly("1 + a*q") * poly("1 + q"));
        assert!(inner(&x, &xx, InnerFlavor::AlphaQ, &d).unwrap().is_zero());
    }

    #[test]
    fn guards() {
        let d = Deform::symbolic();
        let s = SpaceSpec::trivial(5, 8).unwrap();
        assert!(matches!(symmetrizer(6, &s, &d), Err(Error::ResourceLimit(_))));
        let s = SpaceSpec::trivial(1, 2).unwrap();
        assert!(symmetrizer(3, &s, &d).is_err());
        let _ = rat_int(0);
    }
}
