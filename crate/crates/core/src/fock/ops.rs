//! Coordinate actions of the group generators and of the creation,
//! annihilation and gauge operators on the word basis.

use std::sync::Arc;

use num_traits::Zero;

use super::space::{FockVector, SpaceSpec, Word};
use crate::algebra::{Deform, PolyMatrix, PolyScalar, RMatrix, RVector, Rational};
use crate::coxeter::GroupElementRecord;
use crate::error::{Error, Result};

/// Apply `π_i` level-wise: `π_0` conjugates the first slot, `π_i` swaps
/// slots `i` and `i+1`. Words too short for the generator are left fixed.
pub fn act_generator(i: usize, v: &FockVector) -> Result<FockVector> {
    let space = v.space().clone();
    if i >= space.truncation().max(1) {
        return Err(Error::OutOfRange(format!("generator {i} with truncation {}", space.truncation())));
    }
    let mut out = FockVector::zero(space.clone());
    for (w, c) in v.terms() {
        if i == 0 && !w.is_empty() {
            let col = space.involution().column(w[0] as usize);
            for (j, jv) in col.iter().enumerate() {
                if jv.is_zero() {
                    continue;
                }
                let mut w2 = w.clone();
                w2[0] = j as u8;
                out.add_term(w2, c.scale(jv));
            }
        } else if i >= 1 && w.len() > i {
            let mut w2 = w.clone();
            w2.swap(i - 1, i);
            out.add_term(w2, c.clone());
        } else {
            out.add_term(w.clone(), c.clone());
        }
    }
    Ok(out)
}

/// Apply a generator word as an operator product: the rightmost generator
/// acts first.
pub fn act_word(word: &[usize], v: &FockVector) -> Result<FockVector> {
    let mut cur = v.clone();
    for &g in word.iter().rev() {
        cur = act_generator(g, &cur)?;
    }
    Ok(cur)
}

/// Tensor action of a group element through its canonical reduced word.
pub fn act_sigma(sigma: &GroupElementRecord, v: &FockVector) -> Result<FockVector> {
    let n = sigma.perm.rank();
    if let Some((w, _)) = v.terms().find(|(w, _)| w.len() != n) {
        return Err(Error::Dimension(format!("σ ∈ Σ({n}) applied to a word of length {}", w.len())));
    }
    act_word(&sigma.reduced_word, v)
}

/// The operators that act on the type-B and `(q,t)` Fock spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorSpec {
    /// `b*(x)`: append `x` on the right.
    Create(RVector),
    /// `b(x) = r_q(x) + α ℓ_q^N(x)`.
    Annihilate(RVector),
    /// `p(T) = r_q^T + α ℓ_q^{N,T}`.
    Gauge(RMatrix),
    /// `b(x) + b*(x) + p(T) + λ`.
    BLambda {
        x: RVector,
        t: RMatrix,
        lambda: Rational,
    },
    QtCreate(RVector),
    QtAnnihilate(RVector),
    QtGauge(RMatrix),
    /// `a(x) + a*(x) + p̃(T)`.
    QtY {
        x: RVector,
        t: RMatrix,
    },
}

impl OperatorSpec {
    pub fn b_lambda(x: RVector, t: RMatrix, lambda: Rational) -> Result<Self> {
        if !t.is_symmetric() {
            return Err(Error::Parameter("T must be symmetric".into()));
        }
        Ok(OperatorSpec::BLambda { x, t, lambda })
    }

    pub fn qt_y(x: RVector, t: RMatrix) -> Result<Self> {
        if !t.is_symmetric() {
            return Err(Error::Parameter("T must be symmetric".into()));
        }
        Ok(OperatorSpec::QtY { x, t })
    }

    /// Whether the operator can raise the tensor level.
    fn creates(&self) -> bool {
        matches!(
            self,
            OperatorSpec::Create(_)
                | OperatorSpec::BLambda { .. }
                | OperatorSpec::QtCreate(_)
                | OperatorSpec::QtY { .. }
        )
    }
}

/// Powers of a scalar, grown on demand.
struct Powers {
    base: PolyScalar,
    cache: Vec<PolyScalar>,
}

impl Powers {
    fn new(base: &PolyScalar) -> Self {
        Powers { base: base.clone(), cache: vec![PolyScalar::one()] }
    }

    fn get(&mut self, e: usize) -> &PolyScalar {
        while self.cache.len() <= e {
            let next = self.cache.last().unwrap() * &self.base;
            self.cache.push(next);
        }
        &self.cache[e]
    }
}

pub fn create(x: &[Rational], v: &FockVector) -> Result<FockVector> {
    let space = v.space().clone();
    let mut out = FockVector::zero(space.clone());
    for (w, c) in v.terms() {
        if w.len() >= space.truncation() {
            return Err(Error::Truncation(space.truncation()));
        }
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            let mut w2 = w.clone();
            w2.push(j as u8);
            out.add_term(w2, c.scale(xj));
        }
    }
    Ok(out)
}

/// Delete slot `k` (1-based) of every word with coefficient
/// `weight(n, k) * pairing[w_k]`.
fn delete_slot(v: &FockVector, pairing: &[Rational], mut weight: impl FnMut(usize, usize) -> PolyScalar) -> FockVector {
    let mut out = FockVector::zero(v.space().clone());
    for (w, c) in v.terms() {
        let n = w.len();
        for k in 1..=n {
            let p = &pairing[w[k - 1] as usize];
            if p.is_zero() {
                continue;
            }
            let mut w2 = w.clone();
            w2.remove(k - 1);
            out.add_term(w2, (&weight(n, k) * c).scale(p));
        }
    }
    out
}

/// Delete slot `k` and append `image(e_{w_k})` with coefficient `weight(n, k)`.
fn move_slot_to_end(v: &FockVector, image: &RMatrix, mut weight: impl FnMut(usize, usize) -> PolyScalar) -> FockVector {
    let mut out = FockVector::zero(v.space().clone());
    for (w, c) in v.terms() {
        let n = w.len();
        for k in 1..=n {
            let col = image.column(w[k - 1] as usize);
            let wc = &weight(n, k) * c;
            let mut base: Word = w.clone();
            base.remove(k - 1);
            for (j, tj) in col.iter().enumerate() {
                if tj.is_zero() {
                    continue;
                }
                let mut w2 = base.clone();
                w2.push(j as u8);
                out.add_term(w2, wc.scale(tj));
            }
        }
    }
    out
}

/// `r_q(x)`: weight `q^{n-k} <x, x_k>`.
pub fn annihilate_r(x: &[Rational], v: &FockVector, d: &Deform) -> FockVector {
    let mut q = Powers::new(&d.q);
    delete_slot(v, x, |n, k| q.get(n - k).clone())
}

/// `ℓ_q^N(x)`: weight `q^{n-1} q^{k-1} <x, x̄_k>`.
pub fn annihilate_l(x: &[Rational], v: &FockVector, d: &Deform) -> FockVector {
    let pairing = v.space().conj(x);
    let mut q = Powers::new(&d.q);
    delete_slot(v, &pairing, |n, k| q.get(n + k - 2).clone())
}

/// `b(x) = r_q(x) + α ℓ_q^N(x)`.
pub fn annihilate(x: &[Rational], v: &FockVector, d: &Deform) -> FockVector {
    let r = annihilate_r(x, v, d);
    let l = annihilate_l(x, v, d).scale(&d.alpha);
    &r + &l
}

/// Free right annihilator: `<x, x_n>` times the word with its last slot removed.
pub fn annihilate_free(x: &[Rational], v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.space().clone());
    for (w, c) in v.terms() {
        if let Some(&last) = w.last() {
            out.add_term(w[..w.len() - 1].to_vec(), c.scale(&x[last as usize]));
        }
    }
    out
}

/// `r_q^T`: delete slot `k`, append `T x_k`, weight `q^{n-k}`.
pub fn gauge_r(t: &RMatrix, v: &FockVector, d: &Deform) -> FockVector {
    let mut q = Powers::new(&d.q);
    move_slot_to_end(v, t, |n, k| q.get(n - k).clone())
}

/// `ℓ_q^{N,T}`: delete slot `k`, append `T x̄_k`, weight `q^{n-1} q^{k-1}`.
pub fn gauge_l(t: &RMatrix, v: &FockVector, d: &Deform) -> FockVector {
    let tj = t.mul(v.space().involution());
    let mut q = Powers::new(&d.q);
    move_slot_to_end(v, &tj, |n, k| q.get(n + k - 2).clone())
}

/// `p(T) = r_q^T + α ℓ_q^{N,T}`.
pub fn gauge(t: &RMatrix, v: &FockVector, d: &Deform) -> FockVector {
    let r = gauge_r(t, v, d);
    let l = gauge_l(t, v, d).scale(&d.alpha);
    &r + &l
}

/// `p_0(T)`: apply `T` to the last slot.
pub fn gauge_free(t: &RMatrix, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.space().clone());
    for (w, c) in v.terms() {
        let Some(&last) = w.last() else { continue };
        for (j, tj) in t.column(last as usize).iter().enumerate() {
            if tj.is_zero() {
                continue;
            }
            let mut w2 = w.clone();
            *w2.last_mut().unwrap() = j as u8;
            out.add_term(w2, c.scale(tj));
        }
    }
    out
}

/// `(q,t)` annihilator: weight `t^{k-1} q^{n-k} <x, x_k>`.
pub fn qt_annihilate(x: &[Rational], v: &FockVector, d: &Deform) -> FockVector {
    let mut q = Powers::new(&d.q);
    let mut t = Powers::new(&d.t);
    delete_slot(v, x, |n, k| t.get(k - 1) * q.get(n - k))
}

/// `(q,t)` gauge: delete slot `k`, append `T x_k`, weight `t^{k-1} q^{n-k}`.
pub fn qt_gauge(tm: &RMatrix, v: &FockVector, d: &Deform) -> FockVector {
    let mut q = Powers::new(&d.q);
    let mut t = Powers::new(&d.t);
    move_slot_to_end(v, tm, |n, k| t.get(k - 1) * q.get(n - k))
}

/// Apply an operator to a Fock vector. `deform` supplies `α`, `q`, `t`.
pub fn apply_operator(op: &OperatorSpec, v: &FockVector, deform: &Deform) -> Result<FockVector> {
    Ok(match op {
        OperatorSpec::Create(x) | OperatorSpec::QtCreate(x) => create(x, v)?,
        OperatorSpec::Annihilate(x) => annihilate(x, v, deform),
        OperatorSpec::Gauge(t) => gauge(t, v, deform),
        OperatorSpec::BLambda { x, t, lambda } => {
            let mut acc = create(x, v)?;
            acc = &acc + &annihilate(x, v, deform);
            acc = &acc + &gauge(t, v, deform);
            if !lambda.is_zero() {
                acc = &acc + &v.scale(&lambda.into());
            }
            acc
        }
        OperatorSpec::QtAnnihilate(x) => qt_annihilate(x, v, deform),
        OperatorSpec::QtGauge(t) => qt_gauge(t, v, deform),
        OperatorSpec::QtY { x, t } => {
            let mut acc = create(x, v)?;
            acc = &acc + &qt_annihilate(x, v, deform);
            &acc + &qt_gauge(t, v, deform)
        }
    })
}

/// Apply a product of operators to `Ω` and return the `Ω` coefficient.
///
/// `ops` is written in product order `X_k ⋯ X_1`, so the last entry acts
/// first. Components that can no longer return to `Ω` are pruned.
pub fn vacuum_expectation(ops: &[OperatorSpec], space: &SpaceSpec, deform: &Deform) -> Result<PolyScalar> {
    if ops.len() > space.truncation() && ops.iter().any(OperatorSpec::creates) {
        return Err(Error::Truncation(space.truncation()));
    }
    let mut v = FockVector::vacuum(Arc::new(space.clone()));
    for (done, op) in ops.iter().rev().enumerate() {
        v = apply_operator(op, &v, deform)?;
        v.truncate_above(ops.len() - done - 1);
    }
    Ok(v.vacuum_coeff())
}

/// Matrix of a linear map from level `from` to level `to`, built column by
/// column from the images of basis words.
pub fn level_matrix(
    space: &Arc<SpaceSpec>,
    from: usize,
    to: usize,
    mut f: impl FnMut(&FockVector) -> Result<FockVector>,
) -> Result<PolyMatrix> {
    let mut m = PolyMatrix::zeros(space.level_size(to), space.level_size(from));
    for (col, w) in space.level_words(from).into_iter().enumerate() {
        let img = f(&FockVector::basis(space.clone(), w))?;
        for (w2, c) in img.terms() {
            if w2.len() != to {
                return Err(Error::Dimension(format!("image at level {} instead of {to}", w2.len())));
            }
            m.set(space.word_index(w2), col, c.clone());
        }
    }
    Ok(m)
}
