//! Definition-literal brute force. Every quantity is recomputed from the
//! block list by scanning all pairs, with no shared code from the library.

#![allow(dead_code)]

use setpart_core::partition::{BlockWord, OrderedSetPartition, SetPartition};
use setpart_core::statistics::{self, CoordKind, MakFamily};
use setpart_core::{enumerate_all, enumerate::arrangements, trace_profile};

pub struct Oracle {
    pub n: usize,
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
    /// `w[i]` for elements `1..=n`; index 0 unused.
    pub w: Vec<usize>,
    pub openers: Vec<usize>,
    pub closers: Vec<usize>,
}

impl Oracle {
    pub fn new(blocks: Vec<Vec<usize>>) -> Self {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut w = vec![0; n + 1];
        for (idx, b) in blocks.iter().enumerate() {
            for &e in b {
                w[e] = idx + 1;
            }
        }
        let openers = blocks.iter().map(|b| *b.iter().min().unwrap()).collect();
        let closers = blocks.iter().map(|b| *b.iter().max().unwrap()).collect();
        Oracle {
            n,
            k: blocks.len(),
            blocks,
            w,
            openers,
            closers,
        }
    }

    pub fn coord(&self, kind: CoordKind, i: usize) -> i64 {
        let (refs, later, bigger) = match kind {
            CoordKind::Ros => (&self.openers, false, true),
            CoordKind::Rob => (&self.openers, true, true),
            CoordKind::Rcs => (&self.closers, false, true),
            CoordKind::Rcb => (&self.closers, true, true),
            CoordKind::Los => (&self.openers, false, false),
            CoordKind::Lob => (&self.openers, true, false),
            CoordKind::Lcs => (&self.closers, false, false),
            CoordKind::Lcb => (&self.closers, true, false),
        };
        refs.iter()
            .filter(|&&j| if later { j > i } else { j < i })
            .filter(|&&j| if bigger { self.w[j] > self.w[i] } else { self.w[j] < self.w[i] })
            .count() as i64
    }

    pub fn sum(&self, kind: CoordKind) -> i64 {
        (1..=self.n).map(|i| self.coord(kind, i)).sum()
    }

    pub fn mak(&self) -> i64 {
        self.sum(CoordKind::Ros) + self.sum(CoordKind::Lcs)
    }

    pub fn makp(&self) -> i64 {
        self.sum(CoordKind::Lob) + self.sum(CoordKind::Rcb)
    }

    fn nk(&self) -> i64 {
        (self.n * (self.k.max(1) - 1)) as i64
    }

    pub fn lmak(&self) -> i64 {
        self.nk() - self.sum(CoordKind::Los) - self.sum(CoordKind::Rcs)
    }

    pub fn lmakp(&self) -> i64 {
        self.nk() - self.sum(CoordKind::Lcb) - self.sum(CoordKind::Rob)
    }

    pub fn rinv(&self, b: usize) -> i64 {
        (1..=self.n).filter(|&a| self.w[a] > self.w[b] && a < b).count() as i64
    }

    pub fn nrinv(&self, b: usize) -> i64 {
        (1..=self.n).filter(|&a| self.w[a] > self.w[b] && a > b).count() as i64
    }

    pub fn linv(&self, b: usize) -> i64 {
        (1..=self.n).filter(|&a| self.w[a] < self.w[b] && a > b).count() as i64
    }

    pub fn mak_l(&self, l: usize) -> i64 {
        self.mak() - self.nrinv(self.closers[l - 1]) + (self.k - l) as i64
    }

    /// For a partition with `k + 1` blocks.
    pub fn stat(&self, i: usize) -> i64 {
        let rinv_f: i64 = self.closers.iter().map(|&c| self.rinv(c)).sum();
        (self.k - 1) as i64 - rinv_f - self.nrinv(self.closers[i - 1])
    }

    fn dominates(&self, a: usize, b: usize) -> bool {
        self.blocks[a]
            .iter()
            .all(|&x| self.blocks[b].iter().all(|&y| x > y))
    }

    pub fn bmaj(&self) -> i64 {
        (1..self.k)
            .filter(|&i| self.dominates(i - 1, i))
            .map(|i| i as i64)
            .sum()
    }

    pub fn binv(&self) -> i64 {
        let mut count = 0;
        for i in 0..self.k {
            for j in i + 1..self.k {
                if self.dominates(i, j) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Restriction of every block to `[i]`, tagged complete or not.
    fn trace(&self, i: usize) -> Vec<(Vec<usize>, bool)> {
        self.blocks
            .iter()
            .map(|b| {
                let part: Vec<usize> = b.iter().copied().filter(|&x| x <= i).collect();
                let complete = part.len() == b.len();
                (part, complete)
            })
            .collect()
    }

    fn incomplete(part: &(Vec<usize>, bool)) -> bool {
        !part.0.is_empty() && !part.1
    }

    pub fn l(&self, i: usize) -> usize {
        self.trace(i - 1).iter().filter(|p| Self::incomplete(p)).count()
    }

    pub fn gamma(&self, i: usize) -> usize {
        let t = self.trace(i);
        let own = self.w[i] - 1;
        1 + t[..own].iter().filter(|p| Self::incomplete(p)).count()
    }
}

/// Compares every library statistic with the oracle on one partition;
/// returns the first mismatch.
pub fn check_canonical(p: &SetPartition) -> Result<(), String> {
    let o = Oracle::new(p.blocks());
    let ordered = p.to_ordered();
    check_ordered(&ordered)?;
    let k = p.num_blocks();
    let profile = trace_profile(p);
    for i in 1..=p.n() {
        if profile.l[i - 1] != o.l(i) || profile.gamma[i - 1] != o.gamma(i) {
            return Err(format!("{p}: trace at {i}"));
        }
    }
    for l in 1..=k {
        if statistics::mak_l(p, l) != Ok(o.mak_l(l)) {
            return Err(format!("{p}: mak_{l}"));
        }
    }
    if k >= 2 {
        for i in 1..=k {
            if statistics::stat_i(p, i) != Ok(o.stat(i)) {
                return Err(format!("{p}: stat_{i}"));
            }
        }
    }
    Ok(())
}

pub fn check_ordered(p: &OrderedSetPartition) -> Result<(), String> {
    let o = Oracle::new(p.blocks());
    for kind in CoordKind::ALL {
        let row = statistics::coord_row(p, kind);
        for i in 1..=p.n() {
            if row[i - 1] != o.coord(kind, i) {
                return Err(format!("{p}: {kind} at {i}"));
            }
        }
    }
    let fam = MakFamily::of(p);
    let want = MakFamily {
        mak: o.mak(),
        makp: o.makp(),
        lmak: o.lmak(),
        lmakp: o.lmakp(),
    };
    if fam != want || statistics::mak(p) != o.mak() {
        return Err(format!("{p}: mak family {fam:?} vs {want:?}"));
    }
    for b in 1..=p.n() {
        let got = (
            statistics::rinv(p, b).unwrap(),
            statistics::nrinv(p, b).unwrap(),
            statistics::linv(p, b).unwrap(),
        );
        if got != (o.rinv(b), o.nrinv(b), o.linv(b)) {
            return Err(format!("{p}: inversions of {b}"));
        }
    }
    if statistics::bmaj(p) != o.bmaj() || statistics::binv(p) != o.binv() {
        return Err(format!("{p}: bmaj/binv"));
    }
    Ok(())
}

/// Runs the oracle on every partition and every ordered partition of `[n]`,
/// `n <= n_max`. Returns the number of cases checked.
pub fn sweep(n_max: usize) -> Result<u64, String> {
    let mut cases = 0;
    for n in 0..=n_max {
        for p in enumerate_all(n) {
            check_canonical(&p)?;
            cases += 1;
            for op in arrangements(p.clone()).skip(1) {
                check_ordered(&op)?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}
