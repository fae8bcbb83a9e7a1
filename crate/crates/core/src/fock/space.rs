use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{PolyScalar, RMatrix, RVector, Rational};
use crate::error::{Error, Result};

/// A basis word `e_{w1} ⊗ ... ⊗ e_{wn}`; letters are 0-based indices into
/// the basis of `H` (printed 1-based).
pub type Word = Vec<u8>;

/// The one-particle space `H = Q^d` with its involution, plus the Fock
/// truncation level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceSpec {
    d: usize,
    involution: RMatrix,
    truncation: usize,
}

impl SpaceSpec {
    pub fn new(involution: RMatrix, truncation: usize) -> Result<Self> {
        let d = involution.dim();
        if d == 0 || d > u8::MAX as usize {
            return Err(Error::Dimension(format!("dimension {d} unsupported")));
        }
        if !involution.is_symmetric() {
            return Err(Error::Parameter("involution must be symmetric".into()));
        }
        if involution.mul(&involution) != RMatrix::identity(d) {
            return Err(Error::Parameter("involution must square to the identity".into()));
        }
        Ok(SpaceSpec { d, involution, truncation })
    }

    /// Diagonal involution with the given `±1` signature.
    pub fn with_signature(signs: &[i8], truncation: usize) -> Result<Self> {
        let entries: Vec<Rational> = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(Rational::one()),
                -1 => Ok(-Rational::one()),
                _ => Err(Error::Parameter(format!("signature entry {s} is not ±1"))),
            })
            .collect::<Result<_>>()?;
        Self::new(RMatrix::diag(&entries), truncation)
    }

    /// Trivial involution `x̄ = x`.
    pub fn trivial(d: usize, truncation: usize) -> Result<Self> {
        Self::new(RMatrix::identity(d), truncation)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn involution(&self) -> &RMatrix {
        &self.involution
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn with_truncation(&self, truncation: usize) -> Self {
        SpaceSpec { truncation, ..self.clone() }
    }

    /// `x̄`.
    pub fn conj(&self, x: &[Rational]) -> RVector {
        self.involution.apply(x)
    }

    /// Number of basis words at level `n`.
    pub fn level_size(&self, n: usize) -> usize {
        self.d.pow(n as u32)
    }

    /// Basis words of length `n` in index order.
    pub fn level_words(&self, n: usize) -> Vec<Word> {
        (0..self.level_size(n)).map(|i| self.word_at(n, i)).collect()
    }

    pub fn word_at(&self, n: usize, mut index: usize) -> Word {
        let mut w = vec![0u8; n];
        for slot in (0..n).rev() {
            w[slot] = (index % self.d) as u8;
            index /= self.d;
        }
        w
    }

    pub fn word_index(&self, w: &[u8]) -> usize {
        w.iter().fold(0, |acc, &l| acc * self.d + l as usize)
    }

    pub fn unit(&self, i: usize) -> RVector {
        let mut x = vec![Rational::zero(); self.d];
        x[i] = Rational::one();
        x
    }
}

/// Finitely supported element of the truncated algebraic Fock space.
#[derive(Clone, PartialEq, Eq)]
pub struct FockVector {
    coeffs: BTreeMap<Word, PolyScalar>,
    space: Arc<SpaceSpec>,
}

impl FockVector {
    pub fn zero(space: Arc<SpaceSpec>) -> Self {
        FockVector { coeffs: BTreeMap::new(), space }
    }

    /// `Ω`.
    pub fn vacuum(space: Arc<SpaceSpec>) -> Self {
        Self::basis(space, Word::new())
    }

    pub fn basis(space: Arc<SpaceSpec>, w: Word) -> Self {
        let mut v = Self::zero(space);
        v.add_term(w, PolyScalar::one());
        v
    }

    /// Expand `v_1 ⊗ ... ⊗ v_k` in the word basis.
    pub fn pure_tensor(space: Arc<SpaceSpec>, factors: &[RVector]) -> Self {
        let mut v = Self::vacuum(space);
        for f in factors {
            let mut next = Self::zero(v.space.clone());
            for (w, c) in &v.coeffs {
                for (j, xj) in f.iter().enumerate() {
                    if xj.is_zero() {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(j as u8);
                    next.add_term(w2, c.scale(xj));
                }
            }
            v = next;
        }
        v
    }

    pub fn space(&self) -> &Arc<SpaceSpec> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &PolyScalar)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, w: &[u8]) -> PolyScalar {
        self.coeffs.get(w).cloned().unwrap_or_else(PolyScalar::zero)
    }

    /// Coefficient of `Ω`.
    pub fn vacuum_coeff(&self) -> PolyScalar {
        self.coeff(&[])
    }

    pub fn max_level(&self) -> Option<usize> {
        self.coeffs.keys().map(Vec::len).max()
    }

    pub fn add_term(&mut self, w: Word, c: PolyScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &PolyScalar) -> Self {
        let mut out = Self::zero(self.space.clone());
        for (w, v) in &self.coeffs {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Component of length `n`.
    pub fn level(&self, n: usize) -> Self {
        FockVector {
            coeffs: self.coeffs.iter().filter(|(w, _)| w.len() == n).map(|(w, c)| (w.clone(), c.clone())).collect(),
            space: self.space.clone(),
        }
    }

    /// Drop every word longer than `n`.
    pub fn truncate_above(&mut self, n: usize) {
        self.coeffs.retain(|w, _| w.len() <= n);
    }

    pub fn map_coeffs(&self, f: impl Fn(&PolyScalar) -> PolyScalar) -> Self {
        let mut out = Self::zero(self.space.clone());
        for (w, c) in &self.coeffs {
            out.add_term(w.clone(), f(c));
        }
        out
    }
}

impl Add<&FockVector> for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (w, c) in &rhs.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&FockVector> for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (w, c) in &rhs.coeffs {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "Ω".to_string()
                } else {
                    w.iter().map(|l| format!("e{}", l + 1)).collect::<Vec<_>>().join("⊗")
                };
                format!("({c})·{word}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn space_validation() {
        assert!(SpaceSpec::with_signature(&[1, -1], 3).is_ok());
        assert!(SpaceSpec::with_signature(&[2], 3).is_err());
        let not_inv = RMatrix::diag(&[rat(2, 1)]);
        assert!(SpaceSpec::new(not_inv, 2).is_err());
        let swap = RMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]]).unwrap();
        assert!(SpaceSpec::new(swap, 2).is_ok());
    }

    #[test]
    fn word_indexing() {
        let s = SpaceSpec::trivial(3, 4).unwrap();
        for i in 0..27 {
            assert_eq!(s.word_index(&s.word_at(3, i)), i);
        }
        assert_eq!(s.word_at(2, 5), vec![1, 2]);
    }

    #[test]
    fn pure_tensor_expands() {
        let s = Arc::new(SpaceSpec::trivial(2, 3).unwrap());
        let v = FockVector::pure_tensor(s.clone(), &[vec![rat(1, 1), rat(2, 1)], vec![rat(0, 1), rat(3, 1)]]);
        assert_eq!(v.len(), 2);
        assert_eq!(v.coeff(&[1, 1]), PolyScalar::int(6));
        let diff = &v - &v;
        assert!(diff.is_zero());
    }
}
