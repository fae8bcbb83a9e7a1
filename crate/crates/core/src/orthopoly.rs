//! Monic three-term recurrences: Jacobi parameters, polynomial tables,
//! moments by weighted Motzkin paths, a continued-fraction cross-check, and
//! the operator identities of the Poisson-type families.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::{rat_int, Deform, PolyScalar, RMatrix, Rational, Var};
use crate::error::{Error, Result};
use crate::fock::ops::{apply_operator, OperatorSpec};
use crate::fock::space::{FockVector, SpaceSpec};
use crate::moments::IdentityReport;

type Seq = Arc<dyn Fn(usize) -> PolyScalar + Send + Sync>;

/// `y P_n = P_{n+1} + β_n P_n + γ_{n-1} P_{n-1}` with `P_{-1} = 0`, `P_0 = 1`.
#[derive(Clone)]
pub struct JacobiParams {
    beta: Seq,
    gamma: Seq,
}

impl JacobiParams {
    pub fn new(
        beta: impl Fn(usize) -> PolyScalar + Send + Sync + 'static,
        gamma: impl Fn(usize) -> PolyScalar + Send + Sync + 'static,
    ) -> Self {
        JacobiParams { beta: Arc::new(beta), gamma: Arc::new(gamma) }
    }

    pub fn beta(&self, n: usize) -> PolyScalar {
        (self.beta)(n)
    }

    pub fn gamma(&self, n: usize) -> PolyScalar {
        (self.gamma)(n)
    }

    /// Jacobi parameters of one of the named families, with `α`, `q`, `t`
    /// taken from `deform`.
    pub fn family(which: &Family, deform: &Deform) -> Result<Self> {
        let d = deform.clone();
        Ok(match which {
            Family::AlphaQPoissonB => {
                let coef = move |n: usize| {
                    if n == 0 {
                        PolyScalar::zero()
                    } else {
                        &d.qint(n as u32) * &(&PolyScalar::one() + &(&d.alpha * &d.q.pow(n as u32 - 1)))
                    }
                };
                let c2 = coef.clone();
                JacobiParams::new(coef, move |n| c2(n + 1))
            }
            Family::QtPoisson => {
                let d2 = d.clone();
                JacobiParams::new(move |n| d.qtint(n as u32), move |n| d2.qtint(n as u32 + 1))
            }
            Family::AlSalamIsmail { a, b, c } => {
                if !c.is_one() {
                    return Err(Error::Parameter("only the monic start c = 1 is supported".into()));
                }
                let (a, b) = (a.clone(), b.clone());
                let t = d.t.clone();
                let t2 = d.t.clone();
                JacobiParams::new(
                    move |n| if n == 0 { PolyScalar::zero() } else { -(&a * &t.pow(n as u32)) },
                    move |n| &b * &t2.pow(n as u32),
                )
            }
        })
    }
}

impl fmt::Debug for JacobiParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = (0..4).map(|n| self.beta(n).to_string()).collect();
        let g: Vec<String> = (0..4).map(|n| self.gamma(n).to_string()).collect();
        write!(f, "JacobiParams {{ beta: [{}, ..], gamma: [{}, ..] }}", b.join(", "), g.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `β_0 = 0`, `β_n = γ_{n-1} = [n]_q (1 + α q^{n-1})`.
    AlphaQPoissonB,
    /// `β_0 = 0`, `β_n = γ_{n-1} = [n]_{q,t}`.
    QtPoisson,
    /// `y U_n = U_{n+1} - a t^n U_n + b t^{n-1} U_{n-1}`, `U_1 = c y`.
    AlSalamIsmail { a: PolyScalar, b: PolyScalar, c: PolyScalar },
}

impl Family {
    /// The `(a, b, c) = (-1, t², 1)` member.
    pub fn t_free_al_salam_ismail() -> Self {
        Family::AlSalamIsmail { a: PolyScalar::int(-1), b: PolyScalar::t().pow(2), c: PolyScalar::one() }
    }
}

/// A polynomial in `y`; index `k` holds the coefficient of `y^k`.
pub type YPoly = Vec<PolyScalar>;

pub fn format_ypoly(p: &[PolyScalar]) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let y = match k {
            0 => String::new(),
            1 => "y".to_string(),
            _ => format!("y^{k}"),
        };
        let (negative, term) = if c.num_terms() > 1 {
            let cs = c.to_string();
            (false, if k == 0 { format!("({cs})") } else { format!("({cs})*{y}") })
        } else {
            let cs = c.to_string();
            let (negative, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
            };
            let term = match (k, mag.as_str()) {
                (0, _) => mag,
                (_, "1") => y,
                _ => format!("{mag}*{y}"),
            };
            (negative, term)
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// `P_0 .. P_N` from the recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicPolySeq {
    pub polys: Vec<YPoly>,
}

impl MonicPolySeq {
    pub fn get(&self, n: usize) -> &YPoly {
        &self.polys[n]
    }
}

pub fn polys(jp: &JacobiParams, n_max: usize) -> MonicPolySeq {
    let mut out: Vec<YPoly> = vec![vec![PolyScalar::one()]];
    for n in 0..n_max {
        let (beta, gamma) = (jp.beta(n), if n > 0 { jp.gamma(n - 1) } else { PolyScalar::zero() });
        let cur = &out[n];
        let mut next = vec![PolyScalar::zero(); n + 2];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= &(&beta * c);
        }
        if n > 0 {
            for (k, c) in out[n - 1].iter().enumerate() {
                next[k] -= &(&gamma * c);
            }
        }
        out.push(next);
    }
    MonicPolySeq { polys: out }
}

/// `m_0 .. m_N`: weighted Motzkin paths (up 1, level `β_h`, down from `h`
/// `γ_{h-1}`), i.e. the vacuum entry of powers of the Jacobi matrix.
pub fn moments_from_jacobi(jp: &JacobiParams, n_max: usize) -> Vec<PolyScalar> {
    let height = n_max / 2 + 1;
    let beta: Vec<PolyScalar> = (0..=height).map(|h| jp.beta(h)).collect();
    let gamma: Vec<PolyScalar> = (0..=height).map(|h| jp.gamma(h)).collect();
    let mut dp = vec![PolyScalar::zero(); height + 1];
    dp[0] = PolyScalar::one();
    let mut out = vec![PolyScalar::one()];
    for _ in 0..n_max {
        let mut next = vec![PolyScalar::zero(); height + 1];
        for h in 0..=height {
            if dp[h].is_zero() {
                continue;
            }
            if h < height {
                next[h + 1] += &dp[h];
            }
            next[h] += &(&beta[h] * &dp[h]);
            if h > 0 {
                next[h - 1] += &(&gamma[h - 1] * &dp[h]);
            }
        }
        dp = next;
        out.push(dp[0].clone());
    }
    out
}

/// `1 / (1 - g)` for a series `g` with zero constant term.
fn series_geometric(g: &[PolyScalar], order: usize) -> Vec<PolyScalar> {
    let mut h = vec![PolyScalar::one()];
    for n in 1..order {
        let mut c = PolyScalar::zero();
        for i in 1..=n.min(g.len().saturating_sub(1)) {
            c += &(&g[i] * &h[n - i]);
        }
        h.push(c);
    }
    h
}

/// Taylor coefficients `z^0 .. z^{order-1}` of the depth-`k` J-fraction
/// `1 / (1 - β_0 z - γ_0 z² / (1 - β_1 z - ... / (1 - β_{k-1} z)))`.
pub fn continued_fraction_series(jp: &JacobiParams, depth: usize, order: usize) -> Vec<PolyScalar> {
    let mut inner: Vec<PolyScalar> = vec![PolyScalar::zero(); order];
    for j in (0..depth).rev() {
        // g = β_j z + γ_j z² · inner, where inner is the level below (zero at the bottom)
        let mut g = vec![PolyScalar::zero(); order];
        if order > 1 {
            g[1] = jp.beta(j);
        }
        if j + 1 < depth {
            let gz2: Vec<PolyScalar> =
                std::iter::repeat_n(PolyScalar::zero(), 2).chain(inner.iter().map(|c| c * &jp.gamma(j))).collect();
            for (k, c) in gz2.into_iter().enumerate().take(order) {
                g[k] += &c;
            }
        }
        inner = series_geometric(&g, order);
    }
    inner
}

/// Depth-`k` J-fraction versus `m_0 .. m_{2k-1}`.
pub fn continued_fraction_check(jp: &JacobiParams, depth: usize) -> IdentityReport {
    let order = 2 * depth;
    let cf = continued_fraction_series(jp, depth, order);
    let m = moments_from_jacobi(jp, order - 1);
    let fmt = |v: &[PolyScalar]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; ");
    let first = (0..order).find(|&i| cf[i] != m[i]).map(|i| format!("z^{i}: {} vs {}", cf[i], m[i]));
    IdentityReport { equal: first.is_none(), lhs: fmt(&cf), rhs: fmt(&m), first_difference: first }
}

/// `det (m_{i+j})_{0 ≤ i,j ≤ K}` for `K = 0 .. k_max`.
pub fn hankel_determinants(moments: &[f64], k_max: usize) -> Result<Vec<f64>> {
    if moments.len() < 2 * k_max + 1 {
        return Err(Error::Dimension(format!("need {} moments", 2 * k_max + 1)));
    }
    Ok((0..=k_max).map(|k| DMatrix::from_fn(k + 1, k + 1, |i, j| moments[i + j]).determinant()).collect())
}

/// Which operator realizes the family on a one-dimensional `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OperatorModel {
    /// `B(x) = b + b* + p(I)` with `x̄ = sign · x`.
    TypeB { sign: i8 },
    /// `Y(x) = a + a* + p̃(I)`.
    Qt,
}

fn model_operator(model: OperatorModel) -> Result<(OperatorSpec, SpaceSpec)> {
    let x = vec![rat_int(1)];
    let t = RMatrix::identity(1);
    Ok(match model {
        OperatorModel::TypeB { sign } => {
            (OperatorSpec::b_lambda(x, t, rat_int(0))?, SpaceSpec::with_signature(&[sign], 1)?)
        }
        OperatorModel::Qt => (OperatorSpec::qt_y(x, t)?, SpaceSpec::trivial(1, 1)?),
    })
}

/// The family whose polynomials should satisfy `P_n(X) Ω = x^{⊗n}`.
fn model_family(model: OperatorModel, deform: &Deform) -> Result<JacobiParams> {
    match model {
        OperatorModel::TypeB { sign } => {
            let d = if sign == -1 { deform.clone().with_alpha(-&deform.alpha) } else { deform.clone() };
            JacobiParams::family(&Family::AlphaQPoissonB, &d)
        }
        OperatorModel::Qt => JacobiParams::family(&Family::QtPoisson, deform),
    }
}

/// `X^k Ω` for `k = 0 .. n_max`.
fn operator_powers(model: OperatorModel, n_max: usize, deform: &Deform) -> Result<Vec<FockVector>> {
    let (op, space) = model_operator(model)?;
    let space = Arc::new(space.with_truncation(n_max.max(1)));
    let mut out = vec![FockVector::vacuum(space)];
    for k in 0..n_max {
        out.push(apply_operator(&op, &out[k], deform)?);
    }
    Ok(out)
}

/// For each `n ≤ n_max`, compares `P_n(X) Ω` with `x^{⊗n}`. On `x̄ = -x`
/// the type-B family is taken at `-α`.
pub fn vacuum_polynomial_identity(model: OperatorModel, n_max: usize, deform: &Deform) -> Result<Vec<IdentityReport>> {
    let powers = operator_powers(model, n_max, deform)?;
    let seq = polys(&model_family(model, deform)?, n_max);
    let space = powers[0].space().clone();
    Ok((0..=n_max)
        .map(|n| {
            let mut lhs = FockVector::zero(space.clone());
            for (k, c) in seq.get(n).iter().enumerate() {
                lhs = &lhs + &powers[k].scale(c);
            }
            IdentityReport::vectors(&lhs, &FockVector::basis(space.clone(), vec![0; n]))
        })
        .collect())
}

/// Compares `m_n` of the family with `<Ω, X^n Ω>` for `n ≤ n_max`.
pub fn moment_operator_identity(model: OperatorModel, n_max: usize, deform: &Deform) -> Result<Vec<IdentityReport>> {
    let powers = operator_powers(model, n_max, deform)?;
    let m = moments_from_jacobi(&model_family(model, deform)?, n_max);
    Ok((0..=n_max).map(|n| IdentityReport::scalars(&powers[n].vacuum_coeff(), &m[n])).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionRow {
    pub n: usize,
    /// `None` for the symbolic comparison.
    pub t: Option<String>,
    pub equal: bool,
    pub lhs: String,
    pub rhs: String,
}

/// `U_n(ty) / t^n` with `(a, b, c) = (-1, t², 1)` against the `q = 0` member of
/// the `(q,t)` family, symbolically in `t` and at each value in `ts`.
pub fn substitution_check(n_max: usize, ts: &[Rational]) -> Result<Vec<SubstitutionRow>> {
    if n_max > 10 {
        return Err(Error::ResourceLimit("substitution_check needs N ≤ 10".into()));
    }
    let sym = Deform::symbolic();
    let u = polys(&JacobiParams::family(&Family::t_free_al_salam_ismail(), &sym)?, n_max);
    let p = polys(&JacobiParams::family(&Family::QtPoisson, &sym.clone().with_q(PolyScalar::zero()))?, n_max);
    let mut rows = Vec::new();
    for n in 0..=n_max {
        // coefficient of y^k in U_n(ty)/t^n is u_k t^{k-n}
        let quotient: Option<YPoly> =
            u.get(n).iter().enumerate().map(|(k, c)| c.div_var_pow(Var::T, (n - k) as u32)).collect();
        let lhs = quotient.as_ref().map_or("not divisible by t^n".into(), |q| format_ypoly(q));
        rows.push(SubstitutionRow {
            n,
            t: None,
            equal: quotient.as_ref() == Some(p.get(n)),
            lhs,
            rhs: format_ypoly(p.get(n)),
        });
        for t in ts {
            let zero = Rational::from_integer(0.into());
            let tpow = |e: usize| num_traits::pow(t.clone(), e);
            let lhs: Vec<Rational> =
                u.get(n).iter().enumerate().map(|(k, c)| c.eval(&zero, &zero, t) * tpow(k) / tpow(n)).collect();
            let rhs: Vec<Rational> = p.get(n).iter().map(|c| c.eval(&zero, &zero, t)).collect();
            let show = |v: &[Rational]| format_ypoly(&v.iter().map(PolyScalar::from).collect::<Vec<_>>());
            rows.push(SubstitutionRow {
                n,
                t: Some(crate::algebra::fmt_rational(t)),
                equal: lhs == rhs,
                lhs: show(&lhs),
                rhs: show(&rhs),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn poly(s: &str) -> PolyScalar {
        s.parse().unwrap()
    }

    #[test]
    fn family_parameters() {
        let zero = Deform::at(&rat_int(0), &rat_int(0), &rat_int(0));
        let jp = JacobiParams::family(&Family::AlphaQPoissonB, &zero).unwrap();
        assert_eq!((0..4).map(|n| jp.beta(n)).collect::<Vec<_>>(), vec![0.into(), 1.into(), 1.into(), 1.into()]);
        assert_eq!((0..3).map(|n| jp.gamma(n)).collect::<Vec<_>>(), vec![1.into(), 1.into(), 1.into()]);
        let sym = Deform::symbolic();
        let qt = JacobiParams::family(&Family::QtPoisson, &sym).unwrap();
        assert_eq!(qt.gamma(0), PolyScalar::one());
        assert_eq!(qt.gamma(1), poly("t + q"));
        let b = JacobiParams::family(&Family::AlphaQPoissonB, &sym).unwrap();
        assert_eq!(b.gamma(1), poly("1 + q") * poly("1 + a*q"));
        let bad = Family::AlSalamIsmail { a: 1.into(), b: 1.into(), c: 2.into() };
        assert!(JacobiParams::family(&bad, &sym).is_err());
    }

    #[test]
    fn polynomial_tables() {
        let sym = Deform::symbolic();
        let b = polys(&JacobiParams::family(&Family::AlphaQPoissonB, &sym).unwrap(), 2);
        assert_eq!(b.get(1), &vec![PolyScalar::zero(), PolyScalar::one()]);
        assert_eq!(b.get(2), &vec![poly("-1 - a"), poly("-1 - a"), PolyScalar::one()]);
        let u = polys(&JacobiParams::family(&Family::t_free_al_salam_ismail(), &sym).unwrap(), 2);
        assert_eq!(u.get(2), &vec![poly("-t^2"), poly("-t"), PolyScalar::one()]);
        assert_eq!(format_ypoly(b.get(2)), "y^2 + (-a - 1)*y + (-a - 1)");
        assert_eq!(format_ypoly(b.get(0)), "1");
        let qt = polys(&JacobiParams::family(&Family::QtPoisson, &Deform::symbolic()).unwrap(), 3);
        assert_eq!(format_ypoly(qt.get(2)), "y^2 - y - 1");
        assert_eq!(format_ypoly(qt.get(3)), "y^3 + (-q - t - 1)*y^2 - y + (q + t)");
    }

    #[test]
    fn moment_examples() {
        let sym = Deform::symbolic();
        let b = moments_from_jacobi(&JacobiParams::family(&Family::AlphaQPoissonB, &sym).unwrap(), 3);
        assert_eq!(b[1], PolyScalar::zero());
        assert_eq!(b[2], poly("1 + a"));
        assert_eq!(b[3], poly("1 + a").pow(2));
        let qt =
            moments_from_jacobi(&JacobiParams::family(&Family::QtPoisson, &sym.with_q(PolyScalar::zero())).unwrap(), 5);
        assert_eq!(qt[5], poly("t^2 + 2*t + 3"));
    }

    #[test]
    fn continued_fraction_agrees() {
        let d = Deform::at(&rat(-2, 5), &rat(3, 10), &rat(1, 2));
        for fam in [Family::AlphaQPoissonB, Family::QtPoisson] {
            let jp = JacobiParams::family(&fam, &d).unwrap();
            for k in 1..=3 {
                assert!(continued_fraction_check(&jp, k).equal);
            }
        }
        // symbolic coefficients need no division either
        let jp = JacobiParams::family(&Family::AlphaQPoissonB, &Deform::symbolic()).unwrap();
        assert!(continued_fraction_check(&jp, 3).equal);
    }

    #[test]
    fn hankel_positive() {
        let d = Deform::symbolic();
        let jp = JacobiParams::family(&Family::AlphaQPoissonB, &d).unwrap();
        let m: Vec<f64> = moments_from_jacobi(&jp, 8).iter().map(|c| c.eval_f64(0.4, 0.3, 0.0)).collect();
        assert!(hankel_determinants(&m, 4).unwrap().iter().all(|&x| x > 0.0));
    }

    #[test]
    fn vacuum_identity_small() {
        let d = Deform::symbolic();
        for model in [OperatorModel::TypeB { sign: 1 }, OperatorModel::TypeB { sign: -1 }, OperatorModel::Qt] {
            assert!(vacuum_polynomial_identity(model, 3, &d).unwrap().iter().all(|r| r.equal));
        }
    }

    #[test]
    fn substitution_small() {
        let rows = substitution_check(4, &[rat(1, 2)]).unwrap();
        assert!(rows.iter().all(|r| r.equal), "{rows:?}");
        assert!(substitution_check(11, &[]).is_err());
    }
}
