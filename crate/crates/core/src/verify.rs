//! Exhaustive verification sweeps.
//!
//! Each suite walks every partition of `[n]` for `n <= n_max` (or every
//! ordered partition, or every labelled path) and checks one family of
//! identities. Failures are collected with a witness, capped in number, and
//! tallied per `(n, k)`. With more than one thread the lexicographic range of
//! each `P_n^k` is cut into prefix chunks; chunk results are merged in chunk
//! order, so a report never depends on the thread count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use rayon::ThreadPool;
use serde::Serialize;

use crate::bijections::{match_openers_closers, phi, phi_i, phi_with_certificate};
use crate::enumerate::{arrangements, bell, chunk_prefixes, stirling2, Partitions};
use crate::error::{Error, Result};
use crate::motzkin::{decode, encode, enumerate_paths, reflect, StepKind};
use crate::partition::{classify, trace_profile, BlockWord, SetPartition};
use crate::qseries::{q_factorial, q_int, Counts, QPolynomial, QStirlingTable};
use crate::statistics::{
    bmaj, binv, coord_sum, linv_closers, linv_openers, mak, mak_l, nrinv, rinv_closers, stat_i,
    CoordKind, MakFamily, StatValue,
};

/// Prefix length used to split a range between threads.
const CHUNK_DEPTH: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Theorem1,
    Theorem2,
    Theorem3,
    Lemma1,
    Eq4,
    LosLinv,
    PhiI,
    Eq13,
    Motzkin,
    EulerMahonian,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Theorem3,
        Suite::Lemma1,
        Suite::Eq4,
        Suite::LosLinv,
        Suite::PhiI,
        Suite::Eq13,
        Suite::Motzkin,
        Suite::EulerMahonian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Theorem3 => "theorem3",
            Suite::Lemma1 => "lemma1",
            Suite::Eq4 => "eq4",
            Suite::LosLinv => "los-linv",
            Suite::PhiI => "phi-i",
            Suite::Eq13 => "eq13",
            Suite::Motzkin => "motzkin",
            Suite::EulerMahonian => "euler-mahonian",
        }
    }

    /// Largest `n` swept when the caller does not choose one.
    pub fn default_n_max(self) -> usize {
        match self {
            Suite::Theorem2 | Suite::Theorem3 => 9,
            Suite::PhiI | Suite::EulerMahonian => 7,
            _ => 8,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Theorem1 => "phi is an involution with mak(p) = mak'(phi(p)) and mirrored classes",
            Suite::Theorem2 => "mak = lmak' and mak' = lmak pointwise, with the los/rinv/linv forms",
            Suite::Theorem3 => "mak, mak', lmak, lmak' and every mak_l have generating function S_q(n,k)",
            Suite::Lemma1 => "trace identities for mak and mak' and the opener/closer level matching",
            Suite::Eq4 => "per-element block count identity and its sum over [n]",
            Suite::LosLinv => "los + linv(O) depends only on the opener set",
            Suite::PhiI => "phi_i permutes each opener class and shifts stat_i by one",
            Suite::Eq13 => "nrinv-shifted mak sums and the q-Stirling recurrence",
            Suite::Motzkin => "path encoding round-trips and reflection realizes phi",
            Suite::EulerMahonian => "mak-family plus bmaj or binv gives [k]_q! S_q(n,k) on ordered partitions",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// `None` uses the suite default.
    pub n_max: Option<usize>,
    pub max_witnesses: usize,
    /// 0 and 1 both mean single-threaded.
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_max: None,
            max_witnesses: 10,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {}: expected {}, got {}",
            self.check, self.witness, self.expected, self.actual
        )
    }
}

/// Cases checked for one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub n: usize,
    pub k: usize,
    pub cases: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub n_max: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub tallies: Vec<Tally>,
    pub wall_time_seconds: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Everything but the timing, for comparing runs.
    pub fn same_outcome(&self, other: &Self) -> bool {
        self.suite == other.suite
            && self.n_max == other.n_max
            && (self.k_min, self.k_max) == (other.k_min, other.k_max)
            && self.cases == other.cases
            && self.failure_count == other.failure_count
            && self.failures == other.failures
            && self.tallies == other.tallies
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite {}: n <= {}, k = {}..{}\n",
            self.suite, self.n_max, self.k_min, self.k_max
        );
        for t in &self.tallies {
            out.push_str(&format!("  n={} k={}: {} cases", t.n, t.k, t.cases));
            if t.failures > 0 {
                out.push_str(&format!(", {} failures", t.failures));
            }
            out.push('\n');
        }
        for failure in &self.failures {
            out.push_str(&format!("  FAIL {failure}\n"));
        }
        if self.failure_count > self.failures.len() as u64 {
            out.push_str(&format!(
                "  ... {} more failures not shown\n",
                self.failure_count - self.failures.len() as u64
            ));
        }
        out.push_str(&format!(
            "cases: {}, failures: {}, time: {:.3} s\n{}",
            self.cases,
            self.failure_count,
            self.wall_time_seconds,
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Partial result of a sweep over part of a range.
#[derive(Debug, Clone, Default)]
struct Acc {
    cases: u64,
    failure_count: u64,
    failures: Vec<Failure>,
    cap: usize,
    counts: Vec<Counts>,
}

impl Acc {
    fn new(cap: usize, counters: usize) -> Self {
        Acc {
            cap,
            counts: vec![Counts::default(); counters],
            ..Acc::default()
        }
    }

    fn fail(&mut self, check: &str, witness: impl fmt::Display, expected: impl fmt::Display, actual: impl fmt::Display) {
        self.failure_count += 1;
        if self.failures.len() < self.cap {
            self.failures.push(Failure {
                check: check.to_string(),
                witness: witness.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, check: &str, witness: &dyn fmt::Display, expected: T, actual: T) {
        if expected != actual {
            self.fail(check, witness, format!("{expected:?}"), format!("{actual:?}"));
        }
    }

    fn ok<T>(&mut self, check: &str, witness: &dyn fmt::Display, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(check, witness, "success", e);
                None
            }
        }
    }

    fn record(&mut self, counter: usize, value: StatValue, witness: &dyn fmt::Display) {
        if let Err(e) = self.counts[counter].record(value, || witness.to_string()) {
            self.fail("non-negative statistic", witness, ">= 0", e);
        }
    }

    fn absorb(&mut self, other: Acc) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        let room = self.cap.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        if self.counts.len() < other.counts.len() {
            self.counts.resize(other.counts.len(), Counts::default());
        }
        for (mine, theirs) in self.counts.iter_mut().zip(&other.counts) {
            mine.merge(theirs);
        }
    }
}

struct Ctx<'a> {
    pool: Option<ThreadPool>,
    cap: usize,
    report: VerificationReport,
    sink: &'a mut dyn FnMut(&Failure),
}

impl Ctx<'_> {
    /// Runs `f` on every member of `P_n^k` in lexicographic order.
    fn sweep<F>(&self, n: usize, k: usize, counters: usize, f: F) -> Acc
    where
        F: Fn(&SetPartition, &mut Acc) + Sync,
    {
        let cap = self.cap;
        let run = |prefix: Option<&[usize]>| {
            let mut acc = Acc::new(cap, counters);
            let parts = match prefix {
                Some(pre) => Partitions::with_prefix(n, k, pre),
                None => Partitions::new(n, k),
            };
            for p in parts {
                f(&p, &mut acc);
            }
            acc
        };
        match &self.pool {
            None => run(None),
            Some(pool) => {
                let prefixes = chunk_prefixes(n, k, CHUNK_DEPTH);
                let parts: Vec<Acc> =
                    pool.install(|| prefixes.par_iter().map(|pre| run(Some(pre))).collect());
                let mut total = Acc::new(cap, counters);
                for part in parts {
                    total.absorb(part);
                }
                total
            }
        }
    }

    /// Adds the result for one `(n, k)` and streams its failures.
    fn unit(&mut self, n: usize, k: usize, acc: Acc) {
        let r = &mut self.report;
        r.tallies.push(Tally {
            n,
            k,
            cases: acc.cases,
            failures: acc.failure_count,
        });
        r.cases += acc.cases;
        r.failure_count += acc.failure_count;
        let room = self.cap.saturating_sub(r.failures.len());
        for failure in acc.failures.into_iter().take(room) {
            (self.sink)(&failure);
            r.failures.push(failure);
        }
        if r.tallies.len() == 1 {
            r.k_min = k;
            r.k_max = k;
        } else {
            r.k_min = r.k_min.min(k);
            r.k_max = r.k_max.max(k);
        }
    }
}

/// Runs one suite.
pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport> {
    run_streaming(suite, opts, &mut |_| {})
}

/// Runs every suite in order.
pub fn run_all(opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    Suite::ALL.into_iter().map(|s| run(s, opts)).collect()
}

/// Runs one suite, handing each kept failure to `sink` as soon as the
/// `(n, k)` it belongs to is finished.
pub fn run_streaming(
    suite: Suite,
    opts: &VerifyOptions,
    sink: &mut dyn FnMut(&Failure),
) -> Result<VerificationReport> {
    let n_max = opts.n_max.unwrap_or_else(|| suite.default_n_max());
    let pool = if opts.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::Domain(format!("cannot start thread pool: {e}")))?,
        )
    } else {
        None
    };
    let mut ctx = Ctx {
        pool,
        cap: opts.max_witnesses,
        report: VerificationReport {
            suite,
            n_max,
            k_min: 0,
            k_max: 0,
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
            tallies: Vec::new(),
            wall_time_seconds: 0.0,
        },
        sink,
    };
    let start = Instant::now();
    let table = QStirlingTable::new(n_max);
    match suite {
        Suite::Theorem1 => pointwise(&mut ctx, n_max, check_theorem1),
        Suite::Theorem2 => pointwise(&mut ctx, n_max, check_theorem2),
        Suite::Theorem3 => theorem3(&mut ctx, n_max, &table)?,
        Suite::Lemma1 => pointwise(&mut ctx, n_max, check_lemma1),
        Suite::Eq4 => pointwise(&mut ctx, n_max, check_eq4),
        Suite::LosLinv => pointwise(&mut ctx, n_max, check_los_linv),
        Suite::PhiI => phi_i_suite(&mut ctx, n_max),
        Suite::Eq13 => eq13(&mut ctx, n_max)?,
        Suite::Motzkin => motzkin(&mut ctx, n_max),
        Suite::EulerMahonian => euler_mahonian(&mut ctx, n_max, &table)?,
    }
    ctx.report.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(ctx.report)
}

fn ranges(n_max: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n_max).flat_map(|n| (1..=n).map(move |k| (n, k)))
}

fn pointwise(ctx: &mut Ctx, n_max: usize, check: fn(&SetPartition, &mut Acc)) {
    for (n, k) in ranges(n_max) {
        let acc = ctx.sweep(n, k, 0, |p, acc| {
            acc.cases += 1;
            check(p, acc);
        });
        ctx.unit(n, k, acc);
    }
}

fn mirror_sorted(n: usize, xs: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = xs.iter().map(|&x| n + 1 - x).collect();
    out.sort_unstable();
    out
}

fn sorted(mut xs: Vec<usize>) -> Vec<usize> {
    xs.sort_unstable();
    xs
}

fn check_theorem1(p: &SetPartition, acc: &mut Acc) {
    let Some(cert) = acc.ok("phi", p, phi_with_certificate(p)) else {
        return;
    };
    let image = &cert.image;
    let n = p.n();
    if let Some(back) = acc.ok("phi of image", p, phi(image)) {
        acc.eq("involution", p, p.to_string(), back.to_string());
    }
    acc.eq("mak(p) = mak'(phi(p))", p, mak(p), MakFamily::of(image).makp);
    acc.eq("num blocks", p, p.num_blocks(), image.num_blocks());

    let src = classify(p);
    let img = classify(image);
    acc.eq("closer mirror", p, mirror_sorted(n, &src.opener_nonsingletons), img.closer_nonsingletons.clone());
    acc.eq("opener mirror", p, mirror_sorted(n, &src.closer_nonsingletons), img.opener_nonsingletons.clone());
    acc.eq("singleton mirror", p, mirror_sorted(n, &src.singletons), img.singletons.clone());
    acc.eq("passant mirror", p, mirror_sorted(n, &src.passants), img.passants.clone());
    acc.eq("closer gamma rearranged", p, sorted(cert.f.gamma.clone()), sorted(cert.f_prime.gamma.clone()));
    let reversed: Vec<usize> = cert.p.gamma.iter().rev().copied().collect();
    acc.eq("passant gamma reversed", p, reversed, cert.p_prime.gamma.clone());

    let level_sum = |q: &SetPartition| -> usize {
        let prof = trace_profile(q);
        classify(q).openers.iter().map(|&i| prof.l[i - 1] + 1).sum()
    };
    acc.eq("opener level sum", p, level_sum(p), level_sum(image));
}

/// Counts openers `j < i` with `w_j > w_i` straight off the word.
fn ros_by_word(p: &SetPartition) -> StatValue {
    let w = p.word();
    let mut seen = 0;
    let mut first = vec![false; w.len()];
    for (pos, &b) in w.iter().enumerate() {
        if b > seen {
            first[pos] = true;
            seen = b;
        }
    }
    let mut total = 0;
    for i in 0..w.len() {
        for j in 0..i {
            if first[j] && w[j] > w[i] {
                total += 1;
            }
        }
    }
    total
}

fn check_theorem2(p: &SetPartition, acc: &mut Acc) {
    let fam = MakFamily::of(p);
    acc.eq("mak = lmak'", p, fam.mak, fam.lmakp);
    acc.eq("mak' = lmak", p, fam.makp, fam.lmak);
    acc.eq("direct mak", p, fam.mak, mak(p));
    let los = coord_sum(p, CoordKind::Los);
    let nk = (p.n() * (p.num_blocks() - 1)) as StatValue;
    acc.eq("mak = los - rinv(F) + linv(O)", p, fam.mak, los - rinv_closers(p) + linv_openers(p));
    acc.eq("mak' = n(k-1) - los - linv(F)", p, fam.makp, nk - los - linv_closers(p));
    acc.eq("lob = 0", p, 0, coord_sum(p, CoordKind::Lob));
    acc.eq("ros by word", p, ros_by_word(p), coord_sum(p, CoordKind::Ros));
}

/// Number of closers below `i`, for every `i` in `1..=n`.
fn closers_below(p: &SetPartition) -> Vec<usize> {
    let (_, maxs) = p.block_bounds();
    (1..=p.n())
        .map(|i| maxs.iter().filter(|&&m| m < i).count())
        .collect()
}

fn openers_above(p: &SetPartition) -> Vec<usize> {
    let (mins, _) = p.block_bounds();
    (1..=p.n())
        .map(|i| mins.iter().filter(|&&m| m > i).count())
        .collect()
}

fn check_lemma1(p: &SetPartition, acc: &mut Acc) {
    let k = p.num_blocks() as StatValue;
    let prof = trace_profile(p);
    let class = classify(p);
    let below: StatValue = closers_below(p).iter().sum::<usize>() as StatValue;
    let inner: Vec<usize> = class
        .closer_nonsingletons
        .iter()
        .chain(&class.passants)
        .copied()
        .collect();
    let l = |i: usize| prof.l[i - 1] as StatValue;
    let g = |i: usize| prof.gamma[i - 1] as StatValue;

    let mak_form: StatValue = inner.iter().map(|&i| l(i) - g(i)).sum::<StatValue>() + below;
    acc.eq("mak trace form", p, mak(p), mak_form);
    let makp_form: StatValue = inner.iter().map(|&i| k - g(i)).sum::<StatValue>()
        + class.openers.iter().map(|&i| k - 1 - l(i)).sum::<StatValue>()
        - below;
    acc.eq("mak' trace form", p, MakFamily::of(p).makp, makp_form);
    let closing: StatValue = class.closer_nonsingletons.iter().map(|&i| l(i)).sum();
    let opening: StatValue = class.opener_nonsingletons.iter().map(|&i| l(i) + 1).sum();
    acc.eq("closer levels = opener levels + 1", p, opening, closing);

    if let Some(matching) = acc.ok("matching", p, match_openers_closers(p)) {
        let keys: Vec<usize> = matching.keys().copied().collect();
        let values: BTreeSet<usize> = matching.values().copied().collect();
        acc.eq("matching domain", p, class.opener_nonsingletons.clone(), keys);
        acc.eq(
            "matching range",
            p,
            class.closer_nonsingletons.iter().copied().collect::<BTreeSet<_>>(),
            values,
        );
        for (&a, &c) in &matching {
            acc.eq("matched levels", p, l(a) + 1, l(c));
        }
    }
}

fn check_eq4(p: &SetPartition, acc: &mut Acc) {
    let k = p.num_blocks();
    let prof = trace_profile(p);
    let (mins, _) = p.block_bounds();
    let above = openers_above(p);
    let below = closers_below(p);
    let mut total = mins.len();
    for i in 1..=p.n() {
        let opens = usize::from(mins.contains(&i));
        let here = prof.l[i - 1] + above[i - 1] + below[i - 1];
        acc.eq("block count at each element", p, k, opens + here);
        total += here;
    }
    acc.eq("summed block count", p, p.n() * k, total);
}

fn check_los_linv(p: &SetPartition, acc: &mut Acc) {
    let n = p.n();
    let (mins, _) = p.block_bounds();
    let expected: usize = mins.iter().filter(|&&x| x != 1).map(|&x| n - x + 1).sum();
    acc.eq(
        "los + linv(O)",
        p,
        expected as StatValue,
        coord_sum(p, CoordKind::Los) + linv_openers(p),
    );
}

fn theorem3(ctx: &mut Ctx, n_max: usize, table: &QStirlingTable) -> Result<()> {
    // Counters: mak, mak', lmak, lmak', then mak_1..mak_k.
    const NAMES: [&str; 4] = ["mak", "makp", "lmak", "lmakp"];
    for (n, k) in ranges(n_max) {
        let mut acc = ctx.sweep(n, k, 4 + k, |p, acc| {
            acc.cases += 1;
            let fam = MakFamily::of(p);
            for (c, v) in [fam.mak, fam.makp, fam.lmak, fam.lmakp].into_iter().enumerate() {
                acc.record(c, v, p);
            }
            for l in 1..=k {
                if let Some(v) = acc.ok("mak_l", p, mak_l(p, l)) {
                    acc.record(3 + l, v, p);
                }
            }
        });
        let expected = table.get(n, k)?;
        let family = format!("P_{n}^{k}");
        let gfs: Vec<QPolynomial> = acc.counts.iter().map(Counts::to_polynomial).collect();
        for (c, gf) in gfs.iter().enumerate() {
            let name = match c {
                0..=3 => NAMES[c].to_string(),
                _ => format!("mak_{}", c - 3),
            };
            if gf != &expected {
                acc.fail(&format!("generating function of {name}"), &family, &expected, gf);
            }
            let card = gf.eval_at_one();
            if card != stirling2(n, k).into() {
                acc.fail(&format!("{name} at q = 1"), &family, stirling2(n, k), card);
            }
        }
        ctx.unit(n, k, acc);
    }
    Ok(())
}

/// `rinv(F)`-type exponents can be negative; compare them as multisets.
fn laurent(values: impl IntoIterator<Item = StatValue>) -> BTreeMap<StatValue, u64> {
    let mut out = BTreeMap::new();
    for v in values {
        *out.entry(v).or_insert(0) += 1;
    }
    out
}

fn phi_i_suite(ctx: &mut Ctx, n_max: usize) {
    for n in 2..=n_max {
        for blocks in 2..=n {
            let k = blocks - 1;
            let mut acc = Acc::new(ctx.cap, 0);
            let mut classes: BTreeMap<Vec<usize>, Vec<SetPartition>> = BTreeMap::new();
            for p in Partitions::new(n, blocks) {
                classes.entry(p.block_bounds().0).or_default().push(p);
            }
            for (openers, class) in &classes {
                let label = format!("class with openers {openers:?} in P_{n}^{blocks}");
                let members: BTreeSet<&SetPartition> = class.iter().collect();
                let rinv_f: Vec<StatValue> = class.iter().map(rinv_closers).collect();
                for i in 0..=k {
                    let shifted = laurent(rinv_f.iter().map(|r| i as StatValue - r));
                    let stats: Option<Vec<StatValue>> =
                        class.iter().map(|p| stat_i(p, i + 1).ok()).collect();
                    match stats {
                        Some(stats) => {
                            let actual = laurent(stats);
                            if shifted != actual {
                                acc.fail(
                                    &format!("q^{i} sum q^-rinv(F) = sum q^stat_{}", i + 1),
                                    &label,
                                    format!("{shifted:?}"),
                                    format!("{actual:?}"),
                                );
                            }
                        }
                        None => acc.fail("stat_i", &label, "defined", "error"),
                    }
                }
                for i in 1..=k {
                    let mut images = BTreeSet::new();
                    for p in class {
                        acc.cases += 1;
                        let Some(image) = acc.ok(&format!("phi_{i}"), p, phi_i(p, i)) else {
                            continue;
                        };
                        if !members.contains(&image) {
                            acc.fail(&format!("phi_{i} stays in class"), p, &label, &image);
                        }
                        if let (Ok(before), Ok(after)) = (stat_i(p, i), stat_i(&image, i + 1)) {
                            acc.eq(&format!("stat_{i} = stat_{}(phi_{i}) - 1", i + 1), p, before, after - 1);
                        }
                        images.insert(image);
                    }
                    acc.eq(&format!("phi_{i} injective"), &label, class.len(), images.len());
                }
            }
            ctx.unit(n, blocks, acc);
        }
    }
}

fn eq13(ctx: &mut Ctx, n_max: usize) -> Result<()> {
    // Generating functions of mak on P_m^j, kept for the recurrence.
    let mut mak_gf: BTreeMap<(usize, usize), QPolynomial> = BTreeMap::new();
    mak_gf.insert((0, 0), QPolynomial::one());
    for m in 1..=n_max {
        for blocks in 1..=m {
            let k = blocks - 1;
            let mut acc = ctx.sweep(m, blocks, 1 + blocks, |p, acc| {
                acc.cases += 1;
                let base = mak(p);
                acc.record(0, base, p);
                let (_, maxs) = p.block_bounds();
                for i in 0..=k {
                    if let Some(r) = acc.ok("nrinv", p, nrinv(p, maxs[i])) {
                        acc.record(1 + i, base + k as StatValue - r, p);
                    }
                }
            });
            let plain = acc.counts[0].to_polynomial();
            let family = format!("P_{m}^{blocks}");
            for i in 0..=k {
                let expected = plain.shift_up(i);
                let actual = acc.counts[1 + i].to_polynomial();
                if expected != actual {
                    acc.fail(&format!("nrinv shift at block {}", i + 1), &family, expected, actual);
                }
            }
            // sum_{P_m^{k+1}} = q^k sum_{P_{m-1}^k} + [k+1]_q sum_{P_{m-1}^{k+1}}
            let zero = QPolynomial::zero();
            let fewer = mak_gf.get(&(m - 1, k)).unwrap_or(&zero);
            let same = mak_gf.get(&(m - 1, blocks)).unwrap_or(&zero);
            let recurrence = &fewer.shift_up(k) + &(&q_int(blocks) * same);
            if recurrence != plain {
                acc.fail("q-Stirling recurrence", &family, recurrence, &plain);
            }
            mak_gf.insert((m, blocks), plain);
            ctx.unit(m, blocks, acc);
        }
    }
    Ok(())
}

fn motzkin(ctx: &mut Ctx, n_max: usize) {
    for n in 0..=n_max {
        let paths = enumerate_paths(n);
        let mut by_openings = vec![0u128; n + 1];
        let mut path_acc = Acc::new(ctx.cap, 0);
        for path in &paths {
            path_acc.cases += 1;
            by_openings[path.openings()] += 1;
            if let Some(p) = path_acc.ok("decode", path, decode(path)) {
                path_acc.eq("encode after decode", path, path.to_string(), encode(&p).to_string());
            }
            if let Some(r) = path_acc.ok("reflect", path, reflect(path)) {
                if let Some(back) = path_acc.ok("reflect twice", path, reflect(&r)) {
                    path_acc.eq("reflect twice", path, path.to_string(), back.to_string());
                }
            }
        }
        path_acc.eq("paths counted by Bell number", &format!("length {n}"), bell(n), paths.len() as u128);
        for (k, &count) in by_openings.iter().enumerate() {
            path_acc.eq("paths by openings", &format!("length {n}, {k} openings"), stirling2(n, k), count);
        }

        let ks: Vec<usize> = if n == 0 { vec![0] } else { (1..=n).collect() };
        for (idx, k) in ks.into_iter().enumerate() {
            let mut acc = ctx.sweep(n, k, 0, |p, acc| {
                acc.cases += 1;
                let path = encode(p);
                let class = classify(p);
                let steps = path.steps();
                let count = |kind: StepKind, starred: bool| {
                    steps.iter().filter(|s| s.kind == kind && s.starred == starred).count()
                };
                acc.eq("up steps", p, class.opener_nonsingletons.len(), count(StepKind::NE, false));
                acc.eq("down steps", p, class.closer_nonsingletons.len(), count(StepKind::SE, false));
                acc.eq("starred steps", p, class.singletons.len(), count(StepKind::E, true));
                acc.eq("flat steps", p, class.passants.len(), count(StepKind::E, false));
                if let Some(back) = acc.ok("decode", p, decode(&path)) {
                    acc.eq("decode after encode", p, p.to_string(), back.to_string());
                }
                let via_path = reflect(&path).and_then(|r| decode(&r));
                if let (Some(a), Some(b)) = (acc.ok("reflect", p, via_path), acc.ok("phi", p, phi(p))) {
                    acc.eq("reflection agrees with phi", p, b.to_string(), a.to_string());
                }
            });
            if idx == 0 {
                acc.absorb(std::mem::replace(&mut path_acc, Acc::new(0, 0)));
            }
            ctx.unit(n, k, acc);
        }
    }
}

fn euler_mahonian(ctx: &mut Ctx, n_max: usize, table: &QStirlingTable) -> Result<()> {
    const NAMES: [&str; 8] = [
        "mak+bmaj",
        "makp+bmaj",
        "lmakp+bmaj",
        "lmak+bmaj",
        "mak+binv",
        "makp+binv",
        "lmakp+binv",
        "lmak+binv",
    ];
    for (n, k) in ranges(n_max) {
        let mut acc = ctx.sweep(n, k, 8, |p, acc| {
            for op in arrangements(p.clone()) {
                acc.cases += 1;
                let fam = MakFamily::of(&op);
                acc.eq("mak = lmak' on ordered", &op, fam.mak, fam.lmakp);
                acc.eq("mak' = lmak on ordered", &op, fam.makp, fam.lmak);
                let (bm, bi) = (bmaj(&op), binv(&op));
                let base = [fam.mak, fam.makp, fam.lmakp, fam.lmak];
                for (c, v) in base.iter().enumerate() {
                    acc.record(c, v + bm, &op);
                    acc.record(4 + c, v + bi, &op);
                }
            }
        });
        let expected = &q_factorial(k) * &table.get(n, k)?;
        let family = format!("OP_{n}^{k}");
        let gfs: Vec<QPolynomial> = acc.counts.iter().map(Counts::to_polynomial).collect();
        for (name, gf) in NAMES.iter().zip(&gfs) {
            if gf != &expected {
                acc.fail(&format!("generating function of {name}"), &family, &expected, gf);
            }
        }
        ctx.unit(n, k, acc);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n_max: usize, threads: usize) -> VerifyOptions {
        VerifyOptions {
            n_max: Some(n_max),
            max_witnesses: 10,
            threads,
        }
    }

    #[test]
    fn every_suite_passes_small() {
        for suite in Suite::ALL {
            let report = run(suite, &opts(5, 1)).unwrap();
            assert!(report.passed(), "{}", report.render_text());
            assert!(report.cases > 0, "{suite}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>(), Ok(suite));
        }
        assert_eq!(
            "theorem4".parse::<Suite>(),
            Err(Error::UnknownSuite("theorem4".into()))
        );
    }

    #[test]
    fn threads_do_not_change_reports() {
        for suite in [Suite::Theorem2, Suite::Theorem3, Suite::Motzkin] {
            let one = run(suite, &opts(7, 1)).unwrap();
            let four = run(suite, &opts(7, 4)).unwrap();
            assert!(one.same_outcome(&four), "{suite}");
        }
    }

    #[test]
    fn theorem2_tallies_are_stirling_numbers() {
        let report = run(Suite::Theorem2, &opts(6, 1)).unwrap();
        for t in &report.tallies {
            assert_eq!(t.cases as u128, stirling2(t.n, t.k));
        }
        assert_eq!(report.cases, (1..=6).map(|n| bell(n) as u64).sum::<u64>());
        assert_eq!((report.k_min, report.k_max), (1, 6));
    }

    #[test]
    fn failures_are_capped_and_counted() {
        let mut acc = Acc::new(2, 0);
        for i in 0..5 {
            acc.fail("check", i, 0, 1);
        }
        assert_eq!(acc.failure_count, 5);
        assert_eq!(acc.failures.len(), 2);
        let mut other = Acc::new(2, 0);
        other.absorb(acc);
        assert_eq!(other.failures.len(), 2);
        assert_eq!(other.failure_count, 5);
    }
}
