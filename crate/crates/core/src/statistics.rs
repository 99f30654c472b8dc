//! Scalar statistics on set partitions.
//!
//! Every function here works on any [`BlockWord`], so canonical and ordered
//! partitions share one implementation. A canonical partition is simply an
//! ordered partition whose blocks happen to be sorted by their minima.
//!
//! The coordinate statistics are computed by scanning blocks rather than
//! elements: block `b` contributes its opener (minimum) and its closer
//! (maximum), so each coordinate costs `O(k)` and a whole row `O(n k)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{BlockWord, SetPartition};

pub type StatValue = i64;

/// The eight coordinate statistics, named side / reference / comparison:
/// `Ros` counts openers in blocks to the right that are smaller than `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordKind {
    Ros,
    Rob,
    Rcs,
    Rcb,
    Los,
    Lob,
    Lcs,
    Lcb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    Opener,
    Closer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Smaller,
    Bigger,
}

impl CoordKind {
    pub const ALL: [CoordKind; 8] = [
        CoordKind::Ros,
        CoordKind::Rob,
        CoordKind::Rcs,
        CoordKind::Rcb,
        CoordKind::Los,
        CoordKind::Lob,
        CoordKind::Lcs,
        CoordKind::Lcb,
    ];

    pub fn triple(self) -> (Side, Reference, Comparison) {
        use {Comparison::*, Reference::*, Side::*};
        match self {
            CoordKind::Ros => (Right, Opener, Smaller),
            CoordKind::Rob => (Right, Opener, Bigger),
            CoordKind::Rcs => (Right, Closer, Smaller),
            CoordKind::Rcb => (Right, Closer, Bigger),
            CoordKind::Los => (Left, Opener, Smaller),
            CoordKind::Lob => (Left, Opener, Bigger),
            CoordKind::Lcs => (Left, Closer, Smaller),
            CoordKind::Lcb => (Left, Closer, Bigger),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoordKind::Ros => "ros",
            CoordKind::Rob => "rob",
            CoordKind::Rcs => "rcs",
            CoordKind::Rcb => "rcb",
            CoordKind::Los => "los",
            CoordKind::Lob => "lob",
            CoordKind::Lcs => "lcs",
            CoordKind::Lcb => "lcb",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CoordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoordKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CoordKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownStatistic(s.to_string()))
    }
}

fn check_element<P: BlockWord + ?Sized>(p: &P, i: usize) -> Result<()> {
    if i == 0 || i > p.n() {
        return Err(Error::ElementOutOfRange {
            element: i,
            n: p.n(),
        });
    }
    Ok(())
}

fn count_coord(mins: &[usize], maxs: &[usize], block: usize, i: usize, kind: CoordKind) -> usize {
    let (side, reference, cmp) = kind.triple();
    let range = match side {
        Side::Right => block..mins.len(),
        Side::Left => 0..block - 1,
    };
    let refs = match reference {
        Reference::Opener => &mins[range],
        Reference::Closer => &maxs[range],
    };
    match cmp {
        Comparison::Smaller => refs.iter().filter(|&&r| r < i).count(),
        Comparison::Bigger => refs.iter().filter(|&&r| r > i).count(),
    }
}

/// The coordinate `kind_i(p)` for element `i`.
pub fn coord_stat<P: BlockWord + ?Sized>(p: &P, kind: CoordKind, i: usize) -> Result<StatValue> {
    check_element(p, i)?;
    let (mins, maxs) = p.block_bounds();
    Ok(count_coord(&mins, &maxs, p.block_of(i), i, kind) as StatValue)
}

/// `kind_i(p)` for every element `i = 1..=n`, in element order.
pub fn coord_row<P: BlockWord + ?Sized>(p: &P, kind: CoordKind) -> Vec<StatValue> {
    let (mins, maxs) = p.block_bounds();
    p.word()
        .iter()
        .enumerate()
        .map(|(pos, &b)| count_coord(&mins, &maxs, b, pos + 1, kind) as StatValue)
        .collect()
}

pub fn coord_sum<P: BlockWord + ?Sized>(p: &P, kind: CoordKind) -> StatValue {
    coord_row(p, kind).into_iter().sum()
}

/// All eight coordinate sums at once, indexed in [`CoordKind::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CoordSums([StatValue; 8]);

impl CoordSums {
    pub fn of<P: BlockWord + ?Sized>(p: &P) -> Self {
        let (mins, maxs) = p.block_bounds();
        let mut sums = [0; 8];
        for (pos, &b) in p.word().iter().enumerate() {
            let i = pos + 1;
            for kind in CoordKind::ALL {
                sums[kind.index()] += count_coord(&mins, &maxs, b, i, kind) as StatValue;
            }
        }
        CoordSums(sums)
    }

    pub fn get(&self, kind: CoordKind) -> StatValue {
        self.0[kind.index()]
    }
}

/// `n (k - 1)`, the normalisation used by `lmak` and `lmakp`.
fn n_k_minus_one<P: BlockWord + ?Sized>(p: &P) -> StatValue {
    (p.n() * p.num_blocks().saturating_sub(1)) as StatValue
}

/// The four mak-type statistics computed from one set of coordinate sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MakFamily {
    pub mak: StatValue,
    pub makp: StatValue,
    pub lmak: StatValue,
    pub lmakp: StatValue,
}

impl MakFamily {
    pub fn of<P: BlockWord + ?Sized>(p: &P) -> Self {
        let s = CoordSums::of(p);
        let base = n_k_minus_one(p);
        MakFamily {
            mak: s.get(CoordKind::Ros) + s.get(CoordKind::Lcs),
            makp: s.get(CoordKind::Lob) + s.get(CoordKind::Rcb),
            lmak: base - (s.get(CoordKind::Los) + s.get(CoordKind::Rcs)),
            lmakp: base - (s.get(CoordKind::Lcb) + s.get(CoordKind::Rob)),
        }
    }
}

/// `mak = ros + lcs`, computed without the other six sums.
pub fn mak<P: BlockWord + ?Sized>(p: &P) -> StatValue {
    let (mins, maxs) = p.block_bounds();
    let mut total = 0;
    for (pos, &b) in p.word().iter().enumerate() {
        let i = pos + 1;
        total += mins[b..].iter().filter(|&&m| m < i).count();
        total += maxs[..b - 1].iter().filter(|&&m| m < i).count();
    }
    total as StatValue
}

/// `mak' = lob + rcb`.
pub fn makp<P: BlockWord + ?Sized>(p: &P) -> StatValue {
    coord_sum(p, CoordKind::Lob) + coord_sum(p, CoordKind::Rcb)
}

/// `lmak = n(k-1) - (los + rcs)`.
pub fn lmak<P: BlockWord + ?Sized>(p: &P) -> StatValue {
    n_k_minus_one(p) - coord_sum(p, CoordKind::Los) - coord_sum(p, CoordKind::Rcs)
}

/// `lmak' = n(k-1) - (lcb + rob)`.
pub fn lmakp<P: BlockWord + ?Sized>(p: &P) -> StatValue {
    n_k_minus_one(p) - coord_sum(p, CoordKind::Lcb) - coord_sum(p, CoordKind::Rob)
}

fn count_other_blocks<P: BlockWord + ?Sized>(
    p: &P,
    b: usize,
    later: bool,
    bigger: bool,
) -> StatValue {
    let w = p.word();
    let home = w[b - 1];
    w.iter()
        .enumerate()
        .filter(|&(pos, &blk)| {
            let a = pos + 1;
            let side = if later { blk > home } else { blk < home };
            side && if bigger { a > b } else { a < b }
        })
        .count() as StatValue
}

/// Elements of later blocks smaller than `b`.
pub fn rinv<P: BlockWord + ?Sized>(p: &P, b: usize) -> Result<StatValue> {
    check_element(p, b)?;
    Ok(count_other_blocks(p, b, true, false))
}

/// Elements of later blocks larger than `b`.
pub fn nrinv<P: BlockWord + ?Sized>(p: &P, b: usize) -> Result<StatValue> {
    check_element(p, b)?;
    Ok(count_other_blocks(p, b, true, true))
}

/// Elements of earlier blocks larger than `b`.
pub fn linv<P: BlockWord + ?Sized>(p: &P, b: usize) -> Result<StatValue> {
    check_element(p, b)?;
    Ok(count_other_blocks(p, b, false, true))
}

/// `linv` summed over the openers.
pub fn linv_openers<P: BlockWord + ?Sized>(p: &P) -> StatValue {
    let (mins, _) = p.block_bounds();
    mins.iter()
        .map(|&b| count_other_blocks(p, b, false, true))
        .sum()
}

/// `rinv` summed over the closers.
pub fn rinv_closers<P: BlockWord + ?Sized>(p: &P) -> StatValue {
    let (_, maxs) = p.block_bounds();
    maxs.iter()
        .map(|&b| count_other_blocks(p, b, true, false))
        .sum()
}

/// `linv` summed over the closers.
pub fn linv_closers<P: BlockWord + ?Sized>(p: &P) -> StatValue {
    let (_, maxs) = p.block_bounds();
    maxs.iter()
        .map(|&b| count_other_blocks(p, b, false, true))
        .sum()
}

fn check_block(index: usize, max: usize) -> Result<()> {
    if index == 0 || index > max {
        return Err(Error::BlockOutOfRange { index, max });
    }
    Ok(())
}

/// `mak_l = mak - nrinv(g(B_l)) + k - l`, where `g(B_l)` is the largest
/// element of the `l`-th block. `mak_k` is `mak`.
pub fn mak_l(p: &SetPartition, l: usize) -> Result<StatValue> {
    let k = p.num_blocks();
    check_block(l, k)?;
    let (_, maxs) = p.block_bounds();
    let closer = maxs[l - 1];
    Ok(mak(p) - count_other_blocks(p, closer, true, true) + (k - l) as StatValue)
}

/// `stat_i = k - rinv(F) - nrinv(g(B_i))` on a partition with `k + 1` blocks.
pub fn stat_i(p: &SetPartition, i: usize) -> Result<StatValue> {
    let blocks = p.num_blocks();
    check_block(i, blocks)?;
    let (_, maxs) = p.block_bounds();
    let k = blocks as StatValue - 1;
    Ok(k - rinv_closers(p) - count_other_blocks(p, maxs[i - 1], true, true))
}

/// Descent positions `i` with `B_i > B_{i+1}`, where a block dominates
/// another when its minimum exceeds the other's maximum.
pub fn block_descents<P: BlockWord + ?Sized>(p: &P) -> Vec<usize> {
    let (mins, maxs) = p.block_bounds();
    (1..p.num_blocks())
        .filter(|&i| mins[i - 1] > maxs[i])
        .collect()
}

pub fn bmaj<P: BlockWord + ?Sized>(p: &P) -> StatValue {
    block_descents(p).into_iter().sum::<usize>() as StatValue
}

pub fn binv<P: BlockWord + ?Sized>(p: &P) -> StatValue {
    let (mins, maxs) = p.block_bounds();
    let k = p.num_blocks();
    let mut count = 0;
    for i in 0..k {
        for j in i + 1..k {
            if mins[i] > maxs[j] {
                count += 1;
            }
        }
    }
    count
}

/// A partition-level statistic addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    Coord(CoordKind),
    Mak,
    Makp,
    Lmak,
    Lmakp,
    /// `mak_l` for a fixed block index `l`.
    MakL(usize),
    Bmaj,
    Binv,
    LinvOpeners,
    RinvClosers,
    LinvClosers,
}

impl Statistic {
    /// Looks up a statistic by its CLI name; `mak_l` takes its block index
    /// from `l`.
    pub fn parse(name: &str, l: Option<usize>) -> Result<Self> {
        let name = name.trim();
        if let Ok(c) = name.parse::<CoordKind>() {
            return Ok(Statistic::Coord(c));
        }
        Ok(match name {
            "mak" => Statistic::Mak,
            "makp" => Statistic::Makp,
            "lmak" => Statistic::Lmak,
            "lmakp" => Statistic::Lmakp,
            "bmaj" => Statistic::Bmaj,
            "binv" => Statistic::Binv,
            "linv_openers" => Statistic::LinvOpeners,
            "rinv_closers" => Statistic::RinvClosers,
            "linv_closers" => Statistic::LinvClosers,
            "mak_l" => match l {
                Some(l) => Statistic::MakL(l),
                None => {
                    return Err(Error::Domain(
                        "mak_l needs a block index l".to_string(),
                    ))
                }
            },
            "rinv" | "nrinv" | "linv" => {
                return Err(Error::Domain(format!(
                    "`{name}` is an element-level statistic; use it per element"
                )))
            }
            other => {
                if let Some(l) = other.strip_prefix("mak_").and_then(|s| s.parse().ok()) {
                    Statistic::MakL(l)
                } else {
                    return Err(Error::UnknownStatistic(other.to_string()));
                }
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Statistic::Coord(c) => c.name().to_string(),
            Statistic::Mak => "mak".into(),
            Statistic::Makp => "makp".into(),
            Statistic::Lmak => "lmak".into(),
            Statistic::Lmakp => "lmakp".into(),
            Statistic::MakL(l) => format!("mak_{l}"),
            Statistic::Bmaj => "bmaj".into(),
            Statistic::Binv => "binv".into(),
            Statistic::LinvOpeners => "linv_openers".into(),
            Statistic::RinvClosers => "rinv_closers".into(),
            Statistic::LinvClosers => "linv_closers".into(),
        }
    }

    /// Evaluates the statistic. `mak_l` needs blocks in canonical order.
    pub fn eval<P: BlockWord + ?Sized>(&self, p: &P) -> Result<StatValue> {
        Ok(match *self {
            Statistic::Coord(c) => coord_sum(p, c),
            Statistic::Mak => mak(p),
            Statistic::Makp => makp(p),
            Statistic::Lmak => lmak(p),
            Statistic::Lmakp => lmakp(p),
            Statistic::MakL(l) => {
                let canonical = SetPartition::from_word(p.word().to_vec())
                    .map_err(|_| Error::NotCanonical("mak_l"))?;
                mak_l(&canonical, l)?
            }
            Statistic::Bmaj => bmaj(p),
            Statistic::Binv => binv(p),
            Statistic::LinvOpeners => linv_openers(p),
            Statistic::RinvClosers => rinv_closers(p),
            Statistic::LinvClosers => linv_closers(p),
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A sum of statistics such as `mak+bmaj`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StatSum(pub Vec<Statistic>);

impl StatSum {
    pub fn parse(expr: &str, l: Option<usize>) -> Result<Self> {
        let terms = expr
            .split('+')
            .map(|t| Statistic::parse(t, l))
            .collect::<Result<Vec<_>>>()?;
        if terms.is_empty() {
            return Err(Error::UnknownStatistic(expr.to_string()));
        }
        Ok(StatSum(terms))
    }

    pub fn eval<P: BlockWord + ?Sized>(&self, p: &P) -> Result<StatValue> {
        self.0.iter().map(|s| s.eval(p)).sum()
    }
}

impl fmt::Display for StatSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, s) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Statistics that take one value per element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementStatistic {
    Coord(CoordKind),
    Rinv,
    Nrinv,
    Linv,
}

impl ElementStatistic {
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        match name {
            "rinv" => Ok(ElementStatistic::Rinv),
            "nrinv" => Ok(ElementStatistic::Nrinv),
            "linv" => Ok(ElementStatistic::Linv),
            other => other.parse().map(ElementStatistic::Coord),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ElementStatistic::Coord(c) => c.name(),
            ElementStatistic::Rinv => "rinv",
            ElementStatistic::Nrinv => "nrinv",
            ElementStatistic::Linv => "linv",
        }
    }

    /// Values for elements `1..=n`, in element order.
    pub fn row<P: BlockWord + ?Sized>(&self, p: &P) -> Vec<StatValue> {
        match *self {
            ElementStatistic::Coord(c) => coord_row(p, c),
            ElementStatistic::Rinv => (1..=p.n())
                .map(|b| count_other_blocks(p, b, true, false))
                .collect(),
            ElementStatistic::Nrinv => (1..=p.n())
                .map(|b| count_other_blocks(p, b, true, true))
                .collect(),
            ElementStatistic::Linv => (1..=p.n())
                .map(|b| count_other_blocks(p, b, false, true))
                .collect(),
        }
    }
}
