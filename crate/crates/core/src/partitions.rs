//! Type-B colored set partitions, extended (marked) partitions, and their
//! crossing/nesting statistics.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_COLORED_N: usize = 10;
pub const MAX_EXTENDED_N: usize = 8;

/// A block `{i_1 < ... < i_m}` with colors `c_1..c_{m-1}` on the arcs
/// `{i_j, i_{j+1}}`. Elements are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub elems: Vec<usize>,
    pub colors: Vec<i8>,
}

impl Block {
    pub fn new(elems: Vec<usize>, colors: Vec<i8>) -> Result<Self> {
        if elems.is_empty() || elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(format!("block {elems:?} must be strictly increasing")));
        }
        if colors.len() + 1 != elems.len() || colors.iter().any(|&c| c != 1 && c != -1) {
            return Err(Error::Parameter(format!("block {elems:?} needs {} colors in ±1", elems.len() - 1)));
        }
        Ok(Block { elems, colors })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn min(&self) -> usize {
        self.elems[0]
    }

    pub fn max(&self) -> usize {
        *self.elems.last().unwrap()
    }
}

/// An arc `{left, right}` between consecutive elements of block `block`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub left: usize,
    pub right: usize,
    pub color: i8,
    pub block: usize,
}

impl Arc {
    /// `self` strictly surrounds both endpoints of `other`.
    pub fn nests(&self, other: &Arc) -> bool {
        self.left < other.left && other.right < self.right
    }

    pub fn crosses(&self, other: &Arc) -> bool {
        (self.left < other.left && other.left < self.right && self.right < other.right)
            || (other.left < self.left && self.left < other.right && other.right < self.right)
    }

    pub fn covers_point(&self, p: usize) -> bool {
        self.left < p && p < self.right
    }
}

/// A set partition of `[n]` with `±1` arc colors; blocks are ordered by
/// their maxima.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredPartition {
    n: usize,
    blocks: Vec<Block>,
}

impl ColoredPartition {
    pub fn new(n: usize, mut blocks: Vec<Block>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            for &e in &b.elems {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::Parameter(format!("element {e} repeated or outside [1, {n}]")));
                }
                seen[e] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Parameter(format!("blocks do not cover [1, {n}]")));
        }
        blocks.sort_by_key(Block::max);
        Ok(ColoredPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            for (j, &c) in b.colors.iter().enumerate() {
                out.push(Arc { left: b.elems[j], right: b.elems[j + 1], color: c, block: bi });
            }
        }
        out
    }

    pub fn has_singletons(&self) -> bool {
        self.blocks.iter().any(Block::is_singleton)
    }

    pub fn is_pair_partition(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    /// Index of the block containing `e`.
    pub fn block_of(&self, e: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.elems.contains(&e))
    }
}

/// A colored partition in which some blocks of size at least two are marked
/// as open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedPartition {
    pub base: ColoredPartition,
    /// One flag per block of `base`, in block order.
    pub marked: Vec<bool>,
}

impl ExtendedPartition {
    pub fn new(base: ColoredPartition, marked: Vec<bool>) -> Result<Self> {
        if marked.len() != base.blocks.len() {
            return Err(Error::Dimension("one mark flag per block".into()));
        }
        if base.blocks.iter().zip(&marked).any(|(b, &m)| m && b.is_singleton()) {
            return Err(Error::Parameter("singletons cannot be marked".into()));
        }
        Ok(ExtendedPartition { base, marked })
    }

    pub fn unmarked(base: ColoredPartition) -> Self {
        let marked = vec![false; base.blocks.len()];
        ExtendedPartition { base, marked }
    }

    /// Blocks counted by MaxC / MaxL / MLeft: marked blocks and singletons.
    pub fn open_blocks(&self) -> impl Iterator<Item = (usize, &Block)> {
        self.base.blocks.iter().enumerate().filter(|(i, b)| self.marked[*i] || b.is_singleton())
    }

    /// Unmarked blocks of size at least two.
    pub fn closed_blocks(&self) -> impl Iterator<Item = (usize, &Block)> {
        self.base.blocks.iter().enumerate().filter(|(i, b)| !self.marked[*i] && !b.is_singleton())
    }
}

/// Letter of an operator word: `∗` creates, `1` annihilates, `′` is a gauge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    Star,
    One,
    Prime,
}

impl Eps {
    pub const ALL: [Eps; 3] = [Eps::Star, Eps::One, Eps::Prime];

    pub fn symbol(self) -> char {
        match self {
            Eps::Star => '*',
            Eps::One => '1',
            Eps::Prime => '\'',
        }
    }
}

pub type EpsWord = Vec<Eps>;

pub fn parse_eps(s: &str) -> Result<EpsWord> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '*' | 's' => Ok(Eps::Star),
            '1' | 'o' => Ok(Eps::One),
            '\'' | 'p' => Ok(Eps::Prime),
            _ => Err(Error::Parse(format!("unknown ε letter {c:?}"))),
        })
        .collect()
}

pub fn format_eps(eps: &[Eps]) -> String {
    eps.iter().map(|e| e.symbol()).collect()
}

/// All words in `{∗, 1, ′}^n`, lexicographic with `∗ < 1 < ′`.
pub fn all_eps_words(n: usize) -> Vec<EpsWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                Eps::ALL.iter().map(move |&e| {
                    let mut w2 = w.clone();
                    w2.push(e);
                    w2
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionFilter {
    All,
    NoSingletons,
    PairsOnly,
}

impl FromStr for PartitionFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(PartitionFilter::All),
            "no-singletons" => Ok(PartitionFilter::NoSingletons),
            "pairs-only" | "pairs" => Ok(PartitionFilter::PairsOnly),
            _ => Err(Error::Parse(format!("unknown filter {s:?}"))),
        }
    }
}

/// Uncolored set partitions of `[n]` in restricted-growth-string order; each
/// partition is a list of sorted blocks ordered by their maxima.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let k = rgs.iter().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); k];
            for (e, &b) in rgs.iter().enumerate() {
                blocks[b].push(e + 1);
            }
            blocks.sort_by_key(|b: &Vec<usize>| *b.last().unwrap());
            out.push(blocks);
            return;
        }
        let limit = if i == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs.push(b);
            rec(i + 1, n, rgs, max.max(b), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

/// Every `±1` coloring of an uncolored partition, in binary order with the
/// first arc most significant and `+1` before `-1`.
fn colorings(n: usize, blocks: &[Vec<usize>]) -> Vec<ColoredPartition> {
    let arcs: usize = blocks.iter().map(|b| b.len() - 1).sum();
    (0..1u64 << arcs)
        .map(|mask| {
            let mut bit = arcs;
            let colored = blocks
                .iter()
                .map(|b| {
                    let colors = (1..b.len())
                        .map(|_| {
                            bit -= 1;
                            if mask >> bit & 1 == 1 {
                                -1
                            } else {
                                1
                            }
                        })
                        .collect();
                    Block { elems: b.clone(), colors }
                })
                .collect();
            ColoredPartition { n, blocks: colored }
        })
        .collect()
}

fn keep(blocks: &[Vec<usize>], filter: PartitionFilter) -> bool {
    match filter {
        PartitionFilter::All => true,
        PartitionFilter::NoSingletons => blocks.iter().all(|b| b.len() >= 2),
        PartitionFilter::PairsOnly => blocks.iter().all(|b| b.len() == 2),
    }
}

/// `P^B(n)`, `P^B_{≥2}(n)` or `P^B_2(n)`.
pub fn enumerate_colored(n: usize, filter: PartitionFilter) -> Result<Vec<ColoredPartition>> {
    if n > MAX_COLORED_N {
        return Err(Error::ResourceLimit(format!("colored partitions need n ≤ {MAX_COLORED_N}")));
    }
    Ok(set_partitions(n).into_iter().filter(|p| keep(p, filter)).flat_map(|p| colorings(n, &p)).collect())
}

/// Uncolored partitions as all-`+1` colored partitions.
pub fn enumerate_uncolored(n: usize, filter: PartitionFilter) -> Result<Vec<ColoredPartition>> {
    if n > MAX_COLORED_N {
        return Err(Error::ResourceLimit(format!("partitions need n ≤ {MAX_COLORED_N}")));
    }
    Ok(set_partitions(n)
        .into_iter()
        .filter(|p| keep(p, filter))
        .map(|p| ColoredPartition {
            n,
            blocks: p.into_iter().map(|e| Block { colors: vec![1; e.len() - 1], elems: e }).collect(),
        })
        .collect())
}

/// `P^B_E(n)`: every colored partition with every marking of its
/// non-singleton blocks (subset order, first block most significant).
pub fn enumerate_extended(n: usize) -> Result<Vec<ExtendedPartition>> {
    if n > MAX_EXTENDED_N {
        return Err(Error::ResourceLimit(format!("extended partitions need n ≤ {MAX_EXTENDED_N}")));
    }
    let mut out = Vec::new();
    for base in enumerate_colored(n, PartitionFilter::All)? {
        let big: Vec<usize> = (0..base.blocks.len()).filter(|&i| !base.blocks[i].is_singleton()).collect();
        for mask in 0..1u64 << big.len() {
            let mut marked = vec![false; base.blocks.len()];
            for (k, &bi) in big.iter().enumerate() {
                marked[bi] = mask >> (big.len() - 1 - k) & 1 == 1;
            }
            out.push(ExtendedPartition { base: base.clone(), marked });
        }
    }
    Ok(out)
}

/// Whether `p` is compatible with the operator word `eps` (`eps[i-1]` is the
/// letter at position `i`).
pub fn eps_compatible(p: &ExtendedPartition, eps: &[Eps]) -> bool {
    if eps.len() != p.base.n {
        return false;
    }
    p.base.blocks.iter().zip(&p.marked).all(|(b, &marked)| {
        let at = |e: usize| eps[e - 1];
        if at(b.min()) != Eps::Star {
            return false;
        }
        let m = b.len();
        b.elems[1..].iter().enumerate().all(|(j, &e)| {
            let is_max = j + 2 == m;
            match (marked, is_max) {
                (true, _) | (false, false) => at(e) == Eps::Prime,
                (false, true) => at(e) == Eps::One,
            }
        })
    })
}

/// `P^B_{E;ε}(n)`. The marking of each block is forced by the letter at its
/// maximum, so each colored partition contributes at most once.
pub fn enumerate_extended_eps(eps: &[Eps]) -> Result<Vec<ExtendedPartition>> {
    let n = eps.len();
    if n > MAX_EXTENDED_N {
        return Err(Error::ResourceLimit(format!("extended partitions need n ≤ {MAX_EXTENDED_N}")));
    }
    let mut out = Vec::new();
    for base in enumerate_colored(n, PartitionFilter::All)? {
        let marked: Vec<bool> =
            base.blocks.iter().map(|b| !b.is_singleton() && eps[b.max() - 1] == Eps::Prime).collect();
        let p = ExtendedPartition { base, marked };
        if eps_compatible(&p, eps) {
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartitionStats {
    pub rc: usize,
    pub rnarc: usize,
    pub narc: usize,
    pub max_c: usize,
    pub max_l: usize,
    pub rarc: usize,
    pub m_left: usize,
    /// Only defined for noncrossing partitions.
    pub out_arc: Option<usize>,
    pub nest: usize,
}

/// All statistics of an extended partition.
pub fn stats(p: &ExtendedPartition) -> PartitionStats {
    let arcs = p.base.arcs();
    let mut s = PartitionStats { narc: arcs.iter().filter(|a| a.color == -1).count(), ..Default::default() };
    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i + 1..] {
            if a.block == b.block {
                continue;
            }
            if a.crosses(b) {
                s.rc += 1;
            }
            let inner = if a.nests(b) {
                Some(b)
            } else if b.nests(a) {
                Some(a)
            } else {
                None
            };
            if let Some(inner) = inner {
                s.nest += 1;
                if inner.color == -1 {
                    s.rnarc += 1;
                }
            }
        }
    }
    s.rarc = s.nest;
    for (_, v) in p.open_blocks() {
        let m = v.max();
        for w in &arcs {
            if w.covers_point(m) {
                s.max_c += 1;
            }
            if m < w.left {
                s.m_left += 1;
                if w.color == -1 {
                    s.max_l += 1;
                }
            }
        }
    }
    if s.rc == 0 {
        s.out_arc = Some(arcs.iter().filter(|a| !arcs.iter().any(|b| b.nests(a))).count());
    }
    s
}

pub fn colored_stats(p: &ColoredPartition) -> PartitionStats {
    stats(&ExtendedPartition::unmarked(p.clone()))
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.elems.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", e.join(","))
    }
}

fn write_block(f: &mut fmt::Formatter<'_>, b: &Block, marked: bool) -> fmt::Result {
    write!(f, "{b}")?;
    if marked {
        write!(f, "'")?;
    }
    if !b.colors.is_empty() {
        let c: Vec<String> = b.colors.iter().map(i8::to_string).collect();
        write!(f, "_({})", c.join(","))?;
    }
    Ok(())
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write_block(f, b, false)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ExtendedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.base.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write_block(f, b, self.marked[i])?;
        }
        write!(f, "}}")
    }
}

/// Parses `{{1,4}_(-1,1),{2},{3,5}'_(1)}`: blocks in braces, an optional `'`
/// marking, and an optional color list (defaults to all `+1`).
impl FromStr for ExtendedPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("partition {s:?} must be wrapped in braces")))?;
        let bytes: Vec<char> = inner.chars().collect();
        let mut i = 0;
        let mut blocks = Vec::new();
        let mut marks = Vec::new();
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        while i < bytes.len() {
            if bytes[i] == ',' {
                i += 1;
                continue;
            }
            if bytes[i] != '{' {
                return Err(bad("expected '{'"));
            }
            let close = bytes[i..].iter().position(|&c| c == '}').ok_or_else(|| bad("unclosed block"))? + i;
            let elems: Vec<usize> = bytes[i + 1..close]
                .iter()
                .collect::<String>()
                .split(',')
                .map(|t| t.parse::<usize>().map_err(|_| bad("bad element")))
                .collect::<Result<_>>()?;
            i = close + 1;
            let mut marked = false;
            if i < bytes.len() && bytes[i] == '\'' {
                marked = true;
                i += 1;
            }
            let mut colors = vec![1; elems.len().saturating_sub(1)];
            if i + 1 < bytes.len() && bytes[i] == '_' && bytes[i + 1] == '(' {
                let end = bytes[i..].iter().position(|&c| c == ')').ok_or_else(|| bad("unclosed colors"))? + i;
                colors = bytes[i + 2..end]
                    .iter()
                    .collect::<String>()
                    .split(',')
                    .map(|t| t.parse::<i8>().map_err(|_| bad("bad color")))
                    .collect::<Result<_>>()?;
                i = end + 1;
            }
            blocks.push(Block::new(elems, colors)?);
            marks.push(marked);
        }
        let n = blocks.iter().map(Block::max).max().unwrap_or(0);
        let mut paired: Vec<(Block, bool)> = blocks.into_iter().zip(marks).collect();
        paired.sort_by_key(|(b, _)| b.max());
        let (blocks, marks): (Vec<Block>, Vec<bool>) = paired.into_iter().unzip();
        ExtendedPartition::new(ColoredPartition::new(n, blocks)?, marks)
    }
}

impl FromStr for ColoredPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let p: ExtendedPartition = s.parse()?;
        if p.marked.iter().any(|&m| m) {
            return Err(Error::Parse("colored partitions carry no marks".into()));
        }
        Ok(p.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(n: usize) -> usize {
        set_partitions(n).len()
    }

    #[test]
    fn counts() {
        assert_eq!((0..=6).map(bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15, 52, 203]);
        assert_eq!(enumerate_colored(3, PartitionFilter::All).unwrap().len(), 11);
        assert_eq!(enumerate_colored(2, PartitionFilter::PairsOnly).unwrap().len(), 2);
        assert_eq!(enumerate_colored(3, PartitionFilter::NoSingletons).unwrap().len(), 4);
        assert!(matches!(enumerate_colored(11, PartitionFilter::All), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn extended_three_contains_marked_triples() {
        let all = enumerate_extended(3).unwrap();
        let triple = |m: bool| all.iter().filter(|p| p.base.blocks().len() == 1 && p.marked[0] == m).count();
        assert_eq!(triple(false), 4);
        assert_eq!(triple(true), 4);
        // 1 + 3*(2+2) + (4+4)
        assert_eq!(all.len(), 21);
    }

    #[test]
    fn eps_examples() {
        let e = |s: &str| enumerate_extended_eps(&parse_eps(s).unwrap()).unwrap();
        let single = e("*");
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].to_string(), "{{1}}");
        assert!(e("1").is_empty());
        assert!(e("'").is_empty());
        let closed = e("*1");
        assert_eq!(closed.len(), 2);
        assert!(closed.iter().all(|p| p.marked == vec![false]));
        let open = e("*'");
        assert_eq!(open.len(), 2);
        assert!(open.iter().all(|p| p.marked == vec![true]));
    }

    #[test]
    fn eps_filter_agrees_with_exhaustive_filter() {
        for n in 1..=4 {
            let all = enumerate_extended(n).unwrap();
            for eps in all_eps_words(n) {
                let direct = enumerate_extended_eps(&eps).unwrap();
                let filtered: Vec<_> = all.iter().filter(|p| eps_compatible(p, &eps)).cloned().collect();
                assert_eq!(direct.len(), filtered.len(), "{}", format_eps(&eps));
                for p in &direct {
                    assert!(filtered.contains(p));
                }
            }
        }
    }

    #[test]
    fn fixture_statistics() {
        let p: ExtendedPartition = "{{1,4,6,7}_(-1,1,-1),{2},{3,5,10}'_(1,-1),{8,12}_(-1),{9,11}_(1)}".parse().unwrap();
        let s = stats(&p);
        assert_eq!((s.rc, s.rnarc, s.narc, s.max_c, s.max_l), (5, 1, 4, 3, 3));
        let p: ExtendedPartition = "{{1,4,6,7}_(-1,1,-1),{2},{3,5,10}_(1,-1),{8,12}_(-1),{9,11}_(1)}".parse().unwrap();
        let s = stats(&p);
        assert_eq!((s.rc, s.rnarc, s.narc, s.max_c, s.max_l), (5, 1, 4, 1, 3));
        let p: ExtendedPartition = "{{1,4,6,7}'_(-1,1,-1),{2},{3,5,10}_(1,-1),{8,12}_(-1),{9,11}_(1)}".parse().unwrap();
        let s = stats(&p);
        assert_eq!((s.rc, s.rnarc, s.narc, s.max_c, s.max_l), (5, 1, 4, 2, 4));
    }

    #[test]
    fn display_round_trip() {
        for p in enumerate_extended(4).unwrap() {
            let back: ExtendedPartition = p.to_string().parse().unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn out_arcs_only_for_noncrossing() {
        let p: ColoredPartition = "{{1,3},{2,4}}".parse().unwrap();
        assert_eq!(colored_stats(&p).out_arc, None);
        let p: ColoredPartition = "{{1,4},{2,3}}".parse().unwrap();
        let s = colored_stats(&p);
        assert_eq!((s.out_arc, s.rarc), (Some(1), 1));
        let p: ColoredPartition = "{{1,2,3,4}}".parse().unwrap();
        assert_eq!(colored_stats(&p).out_arc, Some(3));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("{{1,2},{2}}".parse::<ExtendedPartition>().is_err());
        assert!("{{1}'}".parse::<ExtendedPartition>().is_err());
        assert!("{{1,2}_(2)}".parse::<ExtendedPartition>().is_err());
        assert!("{{1},{3}}".parse::<ExtendedPartition>().is_err());
        assert!(parse_eps("*x").is_err());
    }
}
