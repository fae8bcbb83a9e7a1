//! The hyperoctahedral group `Σ(n)` (Coxeter type B).
//!
//! Elements are signed permutations in window notation. Generator `0` flips
//! the sign of `1`; generator `i ≥ 1` swaps `i` and `i+1`. A word
//! `[i1, ..., ik]` denotes the composite `π_{i1} ∘ ... ∘ π_{ik}`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub const MAX_GROUP_RANK: usize = 7;

/// A bijection `σ` of `{±1..±n}` with `σ(-k) = -σ(k)`, stored as the images
/// of `1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { window: (1..=n as i32).collect() }
    }

    pub fn from_window(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &w in &window {
            let a = w.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::Parameter(format!("{window:?} is not a signed permutation")));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { window })
    }

    /// `π_i` in `Σ(n)`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::OutOfRange(format!("generator {i} in Σ({n})")));
        }
        let mut w = Self::identity(n);
        if i == 0 {
            w.window[0] = -1;
        } else {
            w.window.swap(i - 1, i);
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// `σ(k)` for `k ∈ {±1..±n}`.
    pub fn apply(&self, k: i32) -> i32 {
        let v = self.window[k.unsigned_abs() as usize - 1];
        if k < 0 {
            -v
        } else {
            v
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::Dimension(format!("composing Σ({}) with Σ({})", self.rank(), other.rank())));
        }
        Ok(SignedPermutation { window: other.window.iter().map(|&k| self.apply(k)).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut window = vec![0; self.rank()];
        for (i, &v) in self.window.iter().enumerate() {
            let k = i as i32 + 1;
            window[v.unsigned_abs() as usize - 1] = if v < 0 { -k } else { k };
        }
        SignedPermutation { window }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
    }

    pub fn negative_entries(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }

    /// Evaluate a word of generator indices.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut acc = Self::identity(n);
        for &g in word {
            acc = acc.compose(&Self::generator(n, g)?)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.rank());
        for _ in 0..e {
            acc = acc.compose(self).expect("same rank");
        }
        acc
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(i32::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// A group element with its canonical (BFS) reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElementRecord {
    pub perm: SignedPermutation,
    /// Occurrences of `π_0` in the reduced word.
    pub l1: u32,
    /// Occurrences of `π_i`, `i ≥ 1`.
    pub l2: u32,
    pub reduced_word: Vec<usize>,
}

impl GroupElementRecord {
    pub fn length(&self) -> usize {
        self.reduced_word.len()
    }
}

/// All of `Σ(n)` in BFS order with an index by window.
#[derive(Debug)]
pub struct GroupTable {
    n: usize,
    elements: Vec<GroupElementRecord>,
    index: HashMap<SignedPermutation, usize>,
}

impl GroupTable {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[GroupElementRecord] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn record(&self, perm: &SignedPermutation) -> Option<&GroupElementRecord> {
        self.index.get(perm).map(|&i| &self.elements[i])
    }

    /// Coxeter length of `perm`.
    pub fn length(&self, perm: &SignedPermutation) -> Option<usize> {
        self.record(perm).map(GroupElementRecord::length)
    }

    /// Every reduced word of `perm`, found by peeling generators that
    /// shorten the element.
    pub fn all_reduced_words(&self, perm: &SignedPermutation) -> Result<Vec<Vec<usize>>> {
        let len = self.length(perm).ok_or_else(|| Error::Parameter(format!("{perm} is not in Σ({})", self.n)))?;
        if len == 0 {
            return Ok(vec![Vec::new()]);
        }
        let mut out = Vec::new();
        for g in 0..self.n {
            let shorter = perm.compose(&SignedPermutation::generator(self.n, g)?)?;
            if self.length(&shorter) == Some(len - 1) {
                for mut w in self.all_reduced_words(&shorter)? {
                    w.push(g);
                    out.push(w);
                }
            }
        }
        Ok(out)
    }

    /// `Σ_σ α^{l1} q^{l2}` as a coefficient table indexed `[l1][l2]`.
    pub fn length_distribution(&self) -> Vec<Vec<u64>> {
        let max_l1 = self.elements.iter().map(|e| e.l1).max().unwrap_or(0) as usize;
        let max_l2 = self.elements.iter().map(|e| e.l2).max().unwrap_or(0) as usize;
        let mut table = vec![vec![0u64; max_l2 + 1]; max_l1 + 1];
        for e in &self.elements {
            table[e.l1 as usize][e.l2 as usize] += 1;
        }
        table
    }
}

fn build_table(n: usize) -> Result<GroupTable> {
    let gens: Vec<SignedPermutation> = (0..n).map(|g| SignedPermutation::generator(n, g)).collect::<Result<_>>()?;
    let mut elements = Vec::new();
    let mut index = HashMap::new();
    let id = SignedPermutation::identity(n);
    index.insert(id.clone(), 0);
    elements.push(GroupElementRecord { perm: id, l1: 0, l2: 0, reduced_word: Vec::new() });
    let mut queue = VecDeque::from([0usize]);
    while let Some(cur) = queue.pop_front() {
        for (g, gen) in gens.iter().enumerate() {
            let next = elements[cur].perm.compose(gen)?;
            if index.contains_key(&next) {
                continue;
            }
            let mut word = elements[cur].reduced_word.clone();
            word.push(g);
            let l1 = word.iter().filter(|&&i| i == 0).count() as u32;
            let l2 = word.len() as u32 - l1;
            index.insert(next.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(GroupElementRecord { perm: next, l1, l2, reduced_word: word });
        }
    }
    Ok(GroupTable { n, elements, index })
}

static TABLES: [OnceLock<Arc<GroupTable>>; MAX_GROUP_RANK + 1] = [const { OnceLock::new() }; MAX_GROUP_RANK + 1];

/// Enumerate `Σ(n)` by breadth-first search from the identity, generators
/// tried in ascending order. Cached per `n`.
pub fn enumerate_group(n: usize) -> Result<Arc<GroupTable>> {
    if n == 0 || n > MAX_GROUP_RANK {
        return Err(Error::ResourceLimit(format!("group rank {n} outside 1..={MAX_GROUP_RANK}")));
    }
    if let Some(t) = TABLES[n].get() {
        return Ok(t.clone());
    }
    let table = Arc::new(build_table(n)?);
    Ok(TABLES[n].get_or_init(|| table).clone())
}

/// `(l1, l2)` of any minimal word for `σ`.
pub fn length_stats(sigma: &SignedPermutation) -> Result<(u32, u32)> {
    let table = enumerate_group(sigma.rank())?;
    let rec = table.record(sigma).ok_or_else(|| Error::Parameter(format!("{sigma} not found")))?;
    Ok((rec.l1, rec.l2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(n: usize, i: usize) -> SignedPermutation {
        SignedPermutation::generator(n, i).unwrap()
    }

    #[test]
    fn small_groups() {
        let g1 = enumerate_group(1).unwrap();
        let stats: Vec<(u32, u32)> = g1.elements().iter().map(|e| (e.l1, e.l2)).collect();
        assert_eq!(stats, vec![(0, 0), (1, 0)]);

        let g2 = enumerate_group(2).unwrap();
        assert_eq!(g2.len(), 8);
        let mut stats: Vec<(u32, u32)> = g2.elements().iter().map(|e| (e.l1, e.l2)).collect();
        stats.sort();
        let mut expected = vec![(0, 0), (1, 0), (0, 1), (1, 1), (1, 1), (2, 1), (1, 2), (2, 2)];
        expected.sort();
        assert_eq!(stats, expected);
    }

    #[test]
    fn length_stats_examples() {
        assert_eq!(length_stats(&SignedPermutation::identity(3)).unwrap(), (0, 0));
        assert_eq!(length_stats(&gen(2, 0)).unwrap(), (1, 0));
        assert_eq!(length_stats(&gen(2, 1)).unwrap(), (0, 1));
        let longest = SignedPermutation::from_window(vec![-1, -2]).unwrap();
        assert_eq!(length_stats(&longest).unwrap(), (2, 2));
    }

    #[test]
    fn compose_examples() {
        let p0 = gen(2, 0);
        let p1 = gen(2, 1);
        assert!(p0.compose(&p0).unwrap().is_identity());
        assert!(p1.compose(&p1).unwrap().is_identity());
        assert!(p0.compose(&p1).unwrap().pow(4).is_identity());
        assert!(!p0.compose(&p1).unwrap().pow(2).is_identity());
        assert!(p0.compose(&gen(3, 1)).is_err());
        let s = SignedPermutation::from_window(vec![2, -3, 1]).unwrap();
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SignedPermutation::from_window(vec![1, 1]).is_err());
        assert!(SignedPermutation::from_window(vec![1, 3]).is_err());
        assert!(SignedPermutation::generator(2, 2).is_err());
        assert!(matches!(enumerate_group(0), Err(Error::ResourceLimit(_))));
        assert!(matches!(enumerate_group(8), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn words_reproduce_elements() {
        let g = enumerate_group(3).unwrap();
        for e in g.elements() {
            assert_eq!(SignedPermutation::from_word(3, &e.reduced_word).unwrap(), e.perm);
        }
    }
}
