//! Canonical and ordered set partitions of `[n] = {1, ..., n}`.
//!
//! Both partition types store a *block word*: position `i - 1` holds the
//! 1-based index of the block containing element `i`. For a canonical
//! [`SetPartition`] the blocks are ordered by their minima, so the block word
//! is a restricted growth function. For an [`OrderedSetPartition`] the block
//! word is an arbitrary surjection onto `1..=k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Read access shared by canonical and ordered partitions.
pub trait BlockWord {
    /// Block index (1-based) of every element, element `i` at position `i - 1`.
    fn word(&self) -> &[usize];

    fn num_blocks(&self) -> usize;

    /// Size of the ground set.
    fn n(&self) -> usize {
        self.word().len()
    }

    /// Block index of element `i`.
    fn block_of(&self, i: usize) -> usize {
        self.word()[i - 1]
    }

    /// Smallest and largest element of every block, in block order.
    fn block_bounds(&self) -> (Vec<usize>, Vec<usize>) {
        let k = self.num_blocks();
        let mut mins = vec![usize::MAX; k];
        let mut maxs = vec![0; k];
        for (pos, &b) in self.word().iter().enumerate() {
            let e = pos + 1;
            mins[b - 1] = mins[b - 1].min(e);
            maxs[b - 1] = maxs[b - 1].max(e);
        }
        (mins, maxs)
    }

    /// Blocks in order, each sorted increasingly.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (pos, &b) in self.word().iter().enumerate() {
            blocks[b - 1].push(pos + 1);
        }
        blocks
    }

    /// Sizes of the blocks in order.
    fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &b in self.word() {
            sizes[b - 1] += 1;
        }
        sizes
    }
}

/// A partition of `[n]` into `k` blocks ordered by increasing minima.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    word: Vec<usize>,
    k: usize,
}

/// A partition of `[n]` whose blocks come in an arbitrary order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    word: Vec<usize>,
    k: usize,
}

/// A restricted growth word `w_1 ... w_n` with 1-based letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RgfWord(Vec<usize>);

impl BlockWord for SetPartition {
    fn word(&self) -> &[usize] {
        &self.word
    }

    fn num_blocks(&self) -> usize {
        self.k
    }
}

impl BlockWord for OrderedSetPartition {
    fn word(&self) -> &[usize] {
        &self.word
    }

    fn num_blocks(&self) -> usize {
        self.k
    }
}

/// Checks that `blocks` cover `[n]` exactly, with `n` the largest element.
fn validate_blocks(blocks: &[Vec<usize>]) -> Result<usize> {
    for (idx, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::EmptyBlock(idx + 1));
        }
    }
    let n = blocks.iter().flatten().copied().max().unwrap_or(0);
    if blocks.iter().flatten().any(|&e| e == 0) {
        return Err(Error::ZeroElement);
    }
    let mut seen = vec![false; n + 1];
    for &e in blocks.iter().flatten() {
        if seen[e] {
            return Err(Error::Overlap(e));
        }
        seen[e] = true;
    }
    if let Some(missing) = (1..=n).find(|&e| !seen[e]) {
        return Err(Error::Gap { missing, n });
    }
    Ok(n)
}

fn word_from_blocks(n: usize, blocks: &[Vec<usize>]) -> Vec<usize> {
    let mut word = vec![0; n];
    for (idx, block) in blocks.iter().enumerate() {
        for &e in block {
            word[e - 1] = idx + 1;
        }
    }
    word
}

/// Position (1-based) of the first letter breaking restricted growth.
fn first_rgf_violation(letters: &[usize]) -> Option<usize> {
    let mut max = 0;
    for (pos, &w) in letters.iter().enumerate() {
        if w == 0 || w > max + 1 {
            return Some(pos + 1);
        }
        max = max.max(w);
    }
    None
}

impl RgfWord {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        match first_rgf_violation(&letters) {
            Some(pos) => Err(Error::RestrictedGrowth(pos)),
            None => Ok(RgfWord(letters)),
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The largest letter, i.e. the number of blocks.
    pub fn num_blocks(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for RgfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for w in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for RgfWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in s.split_whitespace() {
            let position = s[offset..].find(token).map_or(0, |p| p + offset) + 1;
            offset = position - 1 + token.len();
            let w = token.parse::<usize>().map_err(|_| Error::Parse {
                position,
                message: format!("expected a positive integer, found `{token}`"),
            })?;
            letters.push(w);
        }
        RgfWord::new(letters)
    }
}

impl SetPartition {
    /// The unique partition of the empty set.
    pub fn empty() -> Self {
        SetPartition {
            word: Vec::new(),
            k: 0,
        }
    }

    /// Builds the canonical partition from blocks in any order.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let n = validate_blocks(blocks)?;
        let mut sorted: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        sorted.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition {
            word: word_from_blocks(n, &sorted),
            k: sorted.len(),
        })
    }

    /// Builds a partition from its restricted growth word.
    pub fn from_rgf(rgf: &RgfWord) -> Self {
        SetPartition {
            k: rgf.num_blocks(),
            word: rgf.0.clone(),
        }
    }

    /// Builds a partition from raw letters, validating restricted growth.
    pub fn from_word(word: Vec<usize>) -> Result<Self> {
        let rgf = RgfWord::new(word)?;
        Ok(SetPartition {
            k: rgf.num_blocks(),
            word: rgf.0,
        })
    }

    /// Trusted constructor for enumeration code that maintains restricted growth.
    pub(crate) fn from_word_unchecked(word: Vec<usize>, k: usize) -> Self {
        debug_assert!(first_rgf_violation(&word).is_none());
        SetPartition { word, k }
    }

    pub fn to_rgf(&self) -> RgfWord {
        RgfWord(self.word.clone())
    }

    /// The same partition viewed as an ordered partition in canonical order.
    pub fn to_ordered(&self) -> OrderedSetPartition {
        OrderedSetPartition {
            word: self.word.clone(),
            k: self.k,
        }
    }

    /// Reorders the blocks; `order[j]` is the canonical index (1-based) of the
    /// block placed at position `j + 1`.
    pub fn arrange(&self, order: &[usize]) -> Result<OrderedSetPartition> {
        let k = self.k;
        let mut position = vec![0; k + 1];
        if order.len() != k {
            return Err(Error::Domain(format!(
                "block order has {} entries, expected {k}",
                order.len()
            )));
        }
        for (j, &b) in order.iter().enumerate() {
            if b == 0 || b > k || position[b] != 0 {
                return Err(Error::Domain(format!(
                    "block order {order:?} is not a permutation of 1..={k}"
                )));
            }
            position[b] = j + 1;
        }
        Ok(OrderedSetPartition {
            word: self.word.iter().map(|&b| position[b]).collect(),
            k,
        })
    }
}

impl OrderedSetPartition {
    /// Builds an ordered partition keeping the given block order.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let n = validate_blocks(blocks)?;
        Ok(OrderedSetPartition {
            word: word_from_blocks(n, blocks),
            k: blocks.len(),
        })
    }

    /// Builds an ordered partition from a surjection `[n] -> [k]`.
    pub fn from_word(word: Vec<usize>) -> Result<Self> {
        let k = word.iter().copied().max().unwrap_or(0);
        let mut hit = vec![false; k + 1];
        for (pos, &b) in word.iter().enumerate() {
            if b == 0 {
                return Err(Error::BadBlockWord {
                    position: pos + 1,
                    letter: b,
                    k,
                });
            }
            hit[b] = true;
        }
        if let Some(letter) = (1..=k).find(|&b| !hit[b]) {
            return Err(Error::BadBlockWord {
                position: 0,
                letter,
                k,
            });
        }
        Ok(OrderedSetPartition { word, k })
    }

    /// Sorts the blocks by their minima.
    pub fn canonical(&self) -> SetPartition {
        let mut relabel = vec![0; self.k + 1];
        let mut next = 0;
        let word = self
            .word
            .iter()
            .map(|&b| {
                if relabel[b] == 0 {
                    next += 1;
                    relabel[b] = next;
                }
                relabel[b]
            })
            .collect();
        SetPartition { word, k: self.k }
    }

    /// Whether the blocks already appear in order of increasing minima.
    pub fn is_canonical(&self) -> bool {
        first_rgf_violation(&self.word).is_none()
    }
}

impl From<&SetPartition> for OrderedSetPartition {
    fn from(p: &SetPartition) -> Self {
        p.to_ordered()
    }
}

fn write_blocks(f: &mut fmt::Formatter<'_>, blocks: &[Vec<usize>]) -> fmt::Result {
    for (bi, block) in blocks.iter().enumerate() {
        if bi > 0 {
            f.write_str("/")?;
        }
        for (ei, e) in block.iter().enumerate() {
            if ei > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_blocks(f, &self.blocks())
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_blocks(f, &self.blocks())
    }
}

/// Parses the block text grammar: blocks separated by `/`, elements by `,`,
/// whitespace ignored. The empty string is the partition of `[0]`.
pub fn parse_blocks(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut number: Option<(usize, usize)> = None;
    let mut number_closed = false;
    let mut expecting_element = false;
    let mut any = false;

    for (idx, ch) in s.chars().enumerate() {
        let position = idx + 1;
        match ch {
            c if c.is_whitespace() => number_closed = number.is_some(),
            '0'..='9' => {
                if number_closed {
                    return Err(Error::Parse {
                        position,
                        message: "expected `,` or `/` between elements".into(),
                    });
                }
                any = true;
                let digit = ch as usize - '0' as usize;
                let (value, start) = number.unwrap_or((0, position));
                let value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(digit))
                    .ok_or_else(|| Error::Parse {
                        position: start,
                        message: "element too large".into(),
                    })?;
                number = Some((value, start));
                expecting_element = false;
            }
            ',' => {
                number_closed = false;
                match number.take() {
                    Some((v, _)) => current.push(v),
                    None => {
                        return Err(Error::Parse {
                            position,
                            message: "expected an element before `,`".into(),
                        })
                    }
                }
                expecting_element = true;
            }
            '/' => {
                any = true;
                number_closed = false;
                if let Some((v, _)) = number.take() {
                    current.push(v);
                } else if expecting_element {
                    return Err(Error::Parse {
                        position,
                        message: "expected an element after `,`".into(),
                    });
                }
                blocks.push(std::mem::take(&mut current));
            }
            other => {
                return Err(Error::Parse {
                    position,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    if let Some((v, _)) = number {
        current.push(v);
    } else if expecting_element {
        return Err(Error::Parse {
            position: s.chars().count() + 1,
            message: "expected an element after `,`".into(),
        });
    }
    if any {
        blocks.push(current);
    }
    Ok(blocks)
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SetPartition::from_blocks(&parse_blocks(s)?)
    }
}

impl FromStr for OrderedSetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrderedSetPartition::from_blocks(&parse_blocks(s)?)
    }
}

macro_rules! text_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(
                deserializer: D,
            ) -> std::result::Result<Self, D::Error> {
                let text = String::deserialize(deserializer)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

// Partitions serialize as their block text, e.g. "1,4,8/2/3,7,9/5,6".
text_serde!(SetPartition);
text_serde!(OrderedSetPartition);

/// Role of an element inside its block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementKind {
    /// Smallest element of a block with at least two elements.
    Opener,
    /// Largest element of a block with at least two elements.
    Closer,
    /// Neither smallest nor largest.
    Passant,
    /// Sole element of its block.
    Singleton,
}

/// Openers `O`, closers `F`, passants `P`, singletons `S` and the
/// non-singleton parts `O_s = O \ S`, `F_s = F \ S`; all sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClassification {
    pub openers: Vec<usize>,
    pub closers: Vec<usize>,
    pub passants: Vec<usize>,
    pub singletons: Vec<usize>,
    pub opener_nonsingletons: Vec<usize>,
    pub closer_nonsingletons: Vec<usize>,
}

/// Kind of every element, element `i` at position `i - 1`.
pub fn element_kinds<P: BlockWord + ?Sized>(p: &P) -> Vec<ElementKind> {
    let (mins, maxs) = p.block_bounds();
    p.word()
        .iter()
        .enumerate()
        .map(|(pos, &b)| {
            let e = pos + 1;
            match (mins[b - 1] == e, maxs[b - 1] == e) {
                (true, true) => ElementKind::Singleton,
                (true, false) => ElementKind::Opener,
                (false, true) => ElementKind::Closer,
                (false, false) => ElementKind::Passant,
            }
        })
        .collect()
}

pub fn classify<P: BlockWord + ?Sized>(p: &P) -> ElementClassification {
    let mut c = ElementClassification {
        openers: Vec::new(),
        closers: Vec::new(),
        passants: Vec::new(),
        singletons: Vec::new(),
        opener_nonsingletons: Vec::new(),
        closer_nonsingletons: Vec::new(),
    };
    for (pos, kind) in element_kinds(p).into_iter().enumerate() {
        let e = pos + 1;
        match kind {
            ElementKind::Singleton => {
                c.openers.push(e);
                c.closers.push(e);
                c.singletons.push(e);
            }
            ElementKind::Opener => {
                c.openers.push(e);
                c.opener_nonsingletons.push(e);
            }
            ElementKind::Closer => {
                c.closers.push(e);
                c.closer_nonsingletons.push(e);
            }
            ElementKind::Passant => c.passants.push(e),
        }
    }
    c
}

/// Incomplete-block counts `l_i`, insertion positions `gamma_i` and element
/// kinds read off the successive restrictions of a partition to `[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceProfile {
    pub l: Vec<usize>,
    pub gamma: Vec<usize>,
    pub kinds: Vec<ElementKind>,
}

/// `l_i` counts blocks `B` with `min B < i <= max B`; `gamma_i - 1` counts
/// blocks left of the block of `i` whose maximum exceeds `i`.
pub fn trace_profile(p: &SetPartition) -> TraceProfile {
    let (mins, maxs) = p.block_bounds();
    let n = p.n();
    let mut l = Vec::with_capacity(n);
    let mut gamma = Vec::with_capacity(n);
    for i in 1..=n {
        let incomplete = mins
            .iter()
            .zip(&maxs)
            .filter(|&(&lo, &hi)| lo < i && i <= hi)
            .count();
        let b = p.block_of(i);
        let left_open = maxs[..b - 1].iter().filter(|&&hi| hi > i).count();
        l.push(incomplete);
        gamma.push(left_open + 1);
    }
    TraceProfile {
        l,
        gamma,
        kinds: element_kinds(p),
    }
}

/// Rebuilds the unique partition with the given kinds and `gamma` values.
///
/// Openers and singletons start a new rightmost block and must carry
/// `gamma = l + 1`; closers and passants join the `gamma`-th incomplete
/// block from the left, a closer sealing it.
pub fn rebuild_from_profile(kinds: &[ElementKind], gamma: &[usize]) -> Result<SetPartition> {
    if kinds.len() != gamma.len() {
        return Err(Error::InconsistentProfile {
            element: kinds.len().min(gamma.len()) + 1,
            reason: format!(
                "{} kinds but {} gamma values",
                kinds.len(),
                gamma.len()
            ),
        });
    }
    let mut word = Vec::with_capacity(kinds.len());
    let mut open: Vec<usize> = Vec::new();
    let mut k = 0;
    for (pos, (&kind, &g)) in kinds.iter().zip(gamma).enumerate() {
        let element = pos + 1;
        match kind {
            ElementKind::Opener | ElementKind::Singleton => {
                if g != open.len() + 1 {
                    return Err(Error::InconsistentProfile {
                        element,
                        reason: format!(
                            "a new block needs gamma = {} but gamma = {g}",
                            open.len() + 1
                        ),
                    });
                }
                k += 1;
                word.push(k);
                if kind == ElementKind::Opener {
                    open.push(k);
                }
            }
            ElementKind::Passant | ElementKind::Closer => {
                if open.is_empty() {
                    return Err(Error::InconsistentProfile {
                        element,
                        reason: "no incomplete block to join".into(),
                    });
                }
                if g == 0 || g > open.len() {
                    return Err(Error::InconsistentProfile {
                        element,
                        reason: format!(
                            "gamma = {g} but only {} incomplete blocks",
                            open.len()
                        ),
                    });
                }
                let b = if kind == ElementKind::Closer {
                    open.remove(g - 1)
                } else {
                    open[g - 1]
                };
                word.push(b);
            }
        }
    }
    if !open.is_empty() {
        return Err(Error::InconsistentProfile {
            element: kinds.len(),
            reason: format!("{} blocks never closed", open.len()),
        });
    }
    Ok(SetPartition::from_word_unchecked(word, k))
}
