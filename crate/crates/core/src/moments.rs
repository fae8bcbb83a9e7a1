//! Combinatorial side of the type-B moment formulas: block cumulants, the
//! colored-partition Wick sum, the extended-partition vector formula, the
//! three specialized sums, and operator-vs-partition comparison reports.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{dot, Deform, PolyScalar, RMatrix, RVector, Rational};
use crate::error::{Error, Result};
use crate::fock::ops::{apply_operator, vacuum_expectation, OperatorSpec};
use crate::fock::space::{FockVector, SpaceSpec};
use crate::partitions::{
    enumerate_colored, enumerate_extended_eps, enumerate_uncolored, stats, Block, Eps, ExtendedPartition,
    PartitionFilter,
};

pub const MAX_WICK_N: usize = 8;
pub const MAX_VECTOR_N: usize = 6;

/// Data of `φ(B^{λ_n}(x_n) ⋯ B^{λ_1}(x_1))`: index `i - 1` holds
/// `x_i`, `T_{x_i}` and `λ_i`.
#[derive(Clone, Debug)]
pub struct MomentProblem {
    pub xs: Vec<RVector>,
    pub ts: Vec<RMatrix>,
    pub lambdas: Vec<Rational>,
    pub space: SpaceSpec,
}

impl MomentProblem {
    pub fn new(xs: Vec<RVector>, ts: Vec<RMatrix>, lambdas: Vec<Rational>, space: SpaceSpec) -> Result<Self> {
        if xs.len() != ts.len() || xs.len() != lambdas.len() {
            return Err(Error::Dimension("xs, Ts and lambdas must have equal lengths".into()));
        }
        let d = space.dim();
        if xs.iter().any(|x| x.len() != d) || ts.iter().any(|t| t.dim() != d) {
            return Err(Error::Dimension(format!("vectors and matrices must have dimension {d}")));
        }
        if ts.iter().any(|t| !t.is_symmetric()) {
            return Err(Error::Parameter("every T must be symmetric".into()));
        }
        Ok(MomentProblem { xs, ts, lambdas, space })
    }

    /// `n` copies of the same `x`, `T` and `λ`.
    pub fn uniform(n: usize, x: RVector, t: RMatrix, lambda: Rational, space: SpaceSpec) -> Result<Self> {
        Self::new(vec![x; n], vec![t; n], vec![lambda; n], space)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    fn x(&self, i: usize) -> &RVector {
        &self.xs[i - 1]
    }

    fn t(&self, i: usize) -> &RMatrix {
        &self.ts[i - 1]
    }

    fn color(&self, c: i8, v: RVector) -> RVector {
        if c == -1 {
            self.space.conj(&v)
        } else {
            v
        }
    }

    /// `f_{m-1} T_{x_{i_{m-1}}} ⋯ f_2 T_{x_{i_2}} f_1 x_min`: the chain of a
    /// closed block, without an outer `T` at the maximum (for a pair this is
    /// the bare `f_1 x_min`).
    pub fn closed_chain(&self, b: &Block) -> RVector {
        let m = b.len();
        let mut v = self.color(b.colors[0], self.x(b.min()).clone());
        for j in 1..m - 1 {
            v = self.t(b.elems[j]).apply(&v);
            v = self.color(b.colors[j], v);
        }
        v
    }

    /// `T_{x_{i_m}} f_{m-1} ⋯ T_{x_{i_2}} f_1 x_min` for a marked block and
    /// `x_min` for a singleton: the open-block chain, ending with the outer `T`.
    pub fn open_chain(&self, b: &Block) -> RVector {
        let mut v = self.x(b.min()).clone();
        for j in 1..b.len() {
            v = self.color(b.colors[j - 1], v);
            v = self.t(b.elems[j]).apply(&v);
        }
        v
    }

    /// Operator factors `B(x_n), ..., B(x_1)` in product order.
    pub fn operator_product(&self) -> Vec<OperatorSpec> {
        (1..=self.len())
            .rev()
            .map(|i| OperatorSpec::BLambda {
                x: self.x(i).clone(),
                t: self.t(i).clone(),
                lambda: self.lambdas[i - 1].clone(),
            })
            .collect()
    }

    /// `b^{ε(n)}(x_n) ⋯ b^{ε(1)}(x_1)` in product order.
    pub fn eps_product(&self, eps: &[Eps]) -> Result<Vec<OperatorSpec>> {
        if eps.len() != self.len() {
            return Err(Error::Dimension(format!("ε has length {}, data has {}", eps.len(), self.len())));
        }
        Ok((1..=self.len())
            .rev()
            .map(|i| match eps[i - 1] {
                Eps::Star => OperatorSpec::Create(self.x(i).clone()),
                Eps::One => OperatorSpec::Annihilate(self.x(i).clone()),
                Eps::Prime => OperatorSpec::Gauge(self.t(i).clone()),
            })
            .collect())
    }

    /// The space with truncation equal to the number of factors.
    pub fn working_space(&self) -> SpaceSpec {
        self.space.with_truncation(self.len().max(1))
    }
}

/// `K^x(B)`: `λ_min` for a singleton, otherwise the closed-chain pairing.
pub fn cumulant_block(b: &Block, prob: &MomentProblem) -> Rational {
    if b.is_singleton() {
        return prob.lambdas[b.min() - 1].clone();
    }
    dot(prob.x(b.max()), &prob.closed_chain(b))
}

/// `Σ_{π ∈ P^B(n)} α^{Narc} q^{rc + 2 rnarc} Π_B K^x(B)`.
pub fn wick_moment(prob: &MomentProblem, deform: &Deform) -> Result<PolyScalar> {
    let n = prob.len();
    if n > MAX_WICK_N {
        return Err(Error::ResourceLimit(format!("wick_moment needs n ≤ {MAX_WICK_N}")));
    }
    let mut acc = PolyScalar::zero();
    for p in enumerate_colored(n, PartitionFilter::All)? {
        let k: Rational = p.blocks().iter().map(|b| cumulant_block(b, prob)).product();
        if k.is_zero() {
            continue;
        }
        let s = crate::partitions::colored_stats(&p);
        acc += deform.weight(s.narc as u32, (s.rc + 2 * s.rnarc) as u32, 0).scale(&k);
    }
    Ok(acc)
}

/// Operator side: `φ(B(x_n) ⋯ B(x_1))`.
pub fn operator_moment(prob: &MomentProblem, deform: &Deform) -> Result<PolyScalar> {
    vacuum_expectation(&prob.operator_product(), &prob.working_space(), deform)
}

/// Weight and tensor factor of one extended partition in the vector formula.
pub fn vector_term(
    p: &ExtendedPartition,
    prob: &MomentProblem,
    deform: &Deform,
) -> (PolyScalar, Rational, Vec<RVector>) {
    let s = stats(p);
    let weight = deform.weight(s.narc as u32, (s.rc + s.max_c + 2 * s.rnarc + 2 * s.max_l) as u32, 0);
    let closed: Rational = p.closed_blocks().map(|(_, b)| dot(prob.x(b.max()), &prob.closed_chain(b))).product();
    // blocks are stored in order of their maxima
    let open: Vec<RVector> = p.open_blocks().map(|(_, b)| prob.open_chain(b)).collect();
    (weight, closed, open)
}

/// `Σ_{π ∈ P^B_{E;ε}(n)} α^{Narc} q^{rc + MaxC + 2 rnarc + 2 MaxL} R^x R̂^x`.
pub fn vector_formula(eps: &[Eps], prob: &MomentProblem, deform: &Deform) -> Result<FockVector> {
    if eps.len() > MAX_VECTOR_N {
        return Err(Error::ResourceLimit(format!("vector_formula needs n ≤ {MAX_VECTOR_N}")));
    }
    if eps.len() != prob.len() {
        return Err(Error::Dimension("ε and data lengths differ".into()));
    }
    let space = Arc::new(prob.working_space());
    let mut acc = FockVector::zero(space.clone());
    for p in enumerate_extended_eps(eps)? {
        let (w, r, open) = vector_term(&p, prob, deform);
        if r.is_zero() {
            continue;
        }
        acc = &acc + &FockVector::pure_tensor(space.clone(), &open).scale(&w.scale(&r));
    }
    Ok(acc)
}

/// Operator side: `b^{ε(n)}(x_n) ⋯ b^{ε(1)}(x_1) Ω`.
pub fn operator_vector(eps: &[Eps], prob: &MomentProblem, deform: &Deform) -> Result<FockVector> {
    let ops = prob.eps_product(eps)?;
    let mut v = FockVector::vacuum(Arc::new(prob.working_space()));
    for op in ops.iter().rev() {
        v = apply_operator(op, &v, deform)?;
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryCase {
    /// `α = λ = 0`: `Σ_{π ∈ P_{≥2}(n)} q^{rc} Π <x_max, T-chain x_min>`.
    QCase,
    /// `T = 0, λ = 0`: pair partitions with `±1` colors.
    Gaussian,
    /// `q = λ = 0`, `x̄ = x`: `Σ_{NC_{≥2}(n)} (1+α)^{OutArc} Π <x_max, T-chain x_min>`.
    FreeAlpha,
}

/// `<x_max, T_{x_{i_{m-1}}} ⋯ T_{x_{i_2}} x_min>` with no color operators.
fn plain_chain(elems: &[usize], prob: &MomentProblem) -> Rational {
    let mut v = prob.x(elems[0]).clone();
    for &e in &elems[1..elems.len() - 1] {
        v = prob.t(e).apply(&v);
    }
    dot(prob.x(*elems.last().unwrap()), &v)
}

/// Perfect matchings of `[n]` as `(i, j)` pairs with `i < j`.
fn matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(free: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(cur.clone());
            return;
        };
        for k in 0..rest.len() {
            cur.push((first, rest[k]));
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &e)| e).collect();
            rec(&remaining, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&(1..=n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    }
    out
}

fn require_zero_lambdas(prob: &MomentProblem) -> Result<()> {
    if prob.lambdas.iter().any(|l| !l.is_zero()) {
        return Err(Error::Parameter("this specialization needs every λ = 0".into()));
    }
    Ok(())
}

fn is_noncrossing(blocks: &[Block]) -> bool {
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            for &a1 in &a.elems {
                for &a2 in &a.elems {
                    for &b1 in &b.elems {
                        for &b2 in &b.elems {
                            if (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Directly evaluates the specialized sums, without the colored-partition
/// enumeration used by [`wick_moment`].
pub fn corollary_case(which: CorollaryCase, prob: &MomentProblem, deform: &Deform) -> Result<PolyScalar> {
    require_zero_lambdas(prob)?;
    let n = prob.len();
    if n > MAX_WICK_N {
        return Err(Error::ResourceLimit(format!("corollary sums need n ≤ {MAX_WICK_N}")));
    }
    let mut acc = PolyScalar::zero();
    match which {
        CorollaryCase::QCase => {
            for p in enumerate_uncolored(n, PartitionFilter::NoSingletons)? {
                let k: Rational = p.blocks().iter().map(|b| plain_chain(&b.elems, prob)).product();
                if k.is_zero() {
                    continue;
                }
                // crossings of distinct-block arcs, counted from the blocks directly
                let mut rc = 0u32;
                for (i, a) in p.blocks().iter().enumerate() {
                    for b in &p.blocks()[i + 1..] {
                        for wa in a.elems.windows(2) {
                            for wb in b.elems.windows(2) {
                                let (i1, j1, i2, j2) = (wa[0], wa[1], wb[0], wb[1]);
                                if (i1 < i2 && i2 < j1 && j1 < j2) || (i2 < i1 && i1 < j2 && j2 < j1) {
                                    rc += 1;
                                }
                            }
                        }
                    }
                }
                acc += deform.q.pow(rc).scale(&k);
            }
        }
        CorollaryCase::Gaussian => {
            if prob.ts.iter().any(|t| !t.is_zero()) {
                return Err(Error::Parameter("the Gaussian case needs every T = 0".into()));
            }
            for m in matchings(n) {
                // each pair independently colored +1 (<x_i, x_j>) or -1 (α <x_i, x̄_j>)
                for mask in 0..1u32 << m.len() {
                    let neg = |k: usize| mask >> k & 1 == 1;
                    let mut value = Rational::one();
                    for (k, &(i, j)) in m.iter().enumerate() {
                        let y = if neg(k) { prob.space.conj(prob.x(i)) } else { prob.x(i).clone() };
                        value *= dot(prob.x(j), &y);
                    }
                    if value.is_zero() {
                        continue;
                    }
                    let (mut cross, mut neg_nest) = (0u32, 0u32);
                    for &(i1, j1) in &m {
                        for (b, &(i2, j2)) in m.iter().enumerate() {
                            if i1 < i2 && i2 < j1 && j1 < j2 {
                                cross += 1;
                            }
                            if i1 < i2 && j2 < j1 && neg(b) {
                                neg_nest += 1;
                            }
                        }
                    }
                    let negs = (0..m.len()).filter(|&k| neg(k)).count() as u32;
                    acc += deform.weight(negs, cross + 2 * neg_nest, 0).scale(&value);
                }
            }
        }
        CorollaryCase::FreeAlpha => {
            if prob.space.involution() != &RMatrix::identity(prob.space.dim()) {
                return Err(Error::Parameter("the free-α case needs x̄ = x (J = identity)".into()));
            }
            let one_plus_alpha = &PolyScalar::one() + &deform.alpha;
            for p in enumerate_uncolored(n, PartitionFilter::NoSingletons)? {
                if !is_noncrossing(p.blocks()) {
                    continue;
                }
                let k: Rational = p.blocks().iter().map(|b| plain_chain(&b.elems, prob)).product();
                if k.is_zero() {
                    continue;
                }
                let arcs: Vec<(usize, usize)> =
                    p.blocks().iter().flat_map(|b| b.elems.windows(2).map(|w| (w[0], w[1]))).collect();
                let outer = arcs.iter().filter(|&&(i, j)| !arcs.iter().any(|&(a, b)| a < i && j < b)).count();
                acc += one_plus_alpha.pow(outer as u32).scale(&k);
            }
        }
    }
    Ok(acc)
}

/// Outcome of comparing two exact computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub equal: bool,
    pub lhs: String,
    pub rhs: String,
    /// First disagreeing monomial (or basis word) with both coefficients.
    pub first_difference: Option<String>,
}

impl IdentityReport {
    pub fn scalars(lhs: &PolyScalar, rhs: &PolyScalar) -> Self {
        IdentityReport {
            equal: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            first_difference: lhs.first_difference(rhs).map(|(m, a, b)| format!("{m}: {a} vs {b}")),
        }
    }

    pub fn vectors(lhs: &FockVector, rhs: &FockVector) -> Self {
        let diff = lhs - rhs;
        let first_difference = diff.terms().next().map(|(w, _)| {
            let word: Vec<String> = w.iter().map(|l| (l + 1).to_string()).collect();
            format!("word ({}): {} vs {}", word.join(","), lhs.coeff(w), rhs.coeff(w))
        });
        IdentityReport { equal: diff.is_zero(), lhs: lhs.to_string(), rhs: rhs.to_string(), first_difference }
    }
}

/// Operator side versus Wick sum for the full product.
pub fn verify_moment(prob: &MomentProblem, deform: &Deform) -> Result<IdentityReport> {
    Ok(IdentityReport::scalars(&operator_moment(prob, deform)?, &wick_moment(prob, deform)?))
}

/// Operator side versus the extended-partition formula for one ε-word.
pub fn verify_vector(eps: &[Eps], prob: &MomentProblem, deform: &Deform) -> Result<IdentityReport> {
    Ok(IdentityReport::vectors(&operator_vector(eps, prob, deform)?, &vector_formula(eps, prob, deform)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};
    use crate::partitions::parse_eps;

    fn unit_problem(n: usize, sign: i8, lambda: i64) -> MomentProblem {
        let space = SpaceSpec::with_signature(&[sign], n.max(1)).unwrap();
        MomentProblem::uniform(n, vec![rat_int(1)], RMatrix::identity(1), rat_int(lambda), space).unwrap()
    }

    #[test]
    fn cumulant_examples() {
        let p = unit_problem(3, 1, 5);
        let single = Block::new(vec![2], vec![]).unwrap();
        assert_eq!(cumulant_block(&single, &p), rat_int(5));
        let pair = Block::new(vec![1, 2], vec![1]).unwrap();
        assert_eq!(cumulant_block(&pair, &p), rat_int(1));
        let triple = Block::new(vec![1, 2, 3], vec![-1, 1]).unwrap();
        assert_eq!(cumulant_block(&triple, &p), rat_int(1));
        assert_eq!(cumulant_block(&triple, &unit_problem(3, -1, 0)), rat_int(-1));
    }

    #[test]
    fn wick_examples() {
        let d = Deform::symbolic();
        let mut p = unit_problem(1, 1, 0);
        p.lambdas[0] = rat(3, 4);
        assert_eq!(wick_moment(&p, &d).unwrap(), PolyScalar::from(rat(3, 4)));
        assert_eq!(wick_moment(&unit_problem(2, 1, 0), &d).unwrap(), "1 + a".parse().unwrap());
        let zero = Deform::at(&rat_int(0), &rat_int(0), &rat_int(0));
        assert_eq!(wick_moment(&unit_problem(4, 1, 0), &zero).unwrap(), PolyScalar::int(3));
    }

    #[test]
    fn vector_examples() {
        let d = Deform::symbolic();
        let space = SpaceSpec::with_signature(&[1, -1], 2).unwrap();
        let t = RMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 1)], vec![rat(1, 1), rat(-2, 1)]]).unwrap();
        let x1 = vec![rat(1, 1), rat(2, 3)];
        let x2 = vec![rat(-1, 2), rat(1, 1)];
        let prob =
            MomentProblem::new(vec![x1.clone(), x2], vec![t.clone(), t.clone()], vec![rat_int(0); 2], space.clone())
                .unwrap();
        let v = vector_formula(&parse_eps("*'").unwrap(), &prob, &d).unwrap();
        let s = Arc::new(prob.working_space());
        let want = &FockVector::pure_tensor(s.clone(), &[t.apply(&x1)])
            + &FockVector::pure_tensor(s.clone(), &[t.apply(&space.conj(&x1))]).scale(&PolyScalar::alpha());
        assert_eq!(v, want);
        let closed = vector_formula(&parse_eps("*1").unwrap(), &prob, &d).unwrap();
        let c =
            &PolyScalar::from(dot(&prob.xs[1], &x1)) + &PolyScalar::alpha().scale(&dot(&prob.xs[1], &space.conj(&x1)));
        assert_eq!(closed, FockVector::vacuum(s.clone()).scale(&c));
        assert!(vector_formula(&parse_eps("1*").unwrap(), &prob, &d).unwrap().is_zero());
    }

    #[test]
    fn corollary_examples() {
        let d = Deform::symbolic();
        let space = SpaceSpec::with_signature(&[1, -1], 2).unwrap();
        let x1 = vec![rat(1, 1), rat(2, 1)];
        let x2 = vec![rat(3, 1), rat(1, 2)];
        let prob = MomentProblem::new(
            vec![x1.clone(), x2.clone()],
            vec![RMatrix::zeros(2); 2],
            vec![rat_int(0); 2],
            space.clone(),
        )
        .unwrap();
        let g = corollary_case(CorollaryCase::Gaussian, &prob, &d).unwrap();
        let want = &PolyScalar::from(dot(&x1, &x2)) + &PolyScalar::alpha().scale(&dot(&x2, &space.conj(&x1)));
        assert_eq!(g, want);

        let fa = corollary_case(CorollaryCase::FreeAlpha, &unit_problem(4, 1, 0), &d).unwrap();
        // {1,2,3,4}: 3 outer arcs; {1,2},{3,4}: 2; {1,4},{2,3}: 1
        let one_a: PolyScalar = "1 + a".parse().unwrap();
        assert_eq!(fa, &(&one_a.pow(3) + &one_a.pow(2)) + &one_a);

        let qc = corollary_case(CorollaryCase::QCase, &unit_problem(3, 1, 0), &d).unwrap();
        assert_eq!(qc, PolyScalar::one());

        assert!(corollary_case(CorollaryCase::QCase, &unit_problem(3, 1, 2), &d).is_err());
        assert!(corollary_case(CorollaryCase::FreeAlpha, &unit_problem(3, -1, 0), &d).is_err());
    }

    #[test]
    fn reports_locate_differences() {
        let a: PolyScalar = "1 + a".parse().unwrap();
        let b: PolyScalar = "1 + 2*a".parse().unwrap();
        let r = IdentityReport::scalars(&a, &b);
        assert!(!r.equal);
        assert!(r.first_difference.unwrap().starts_with("a:"));
        assert!(IdentityReport::scalars(&a, &a).equal);
    }
}
