//! Exhaustive enumeration of `P_n^k` and `OP_n^k`.
//!
//! Canonical partitions come out in lexicographic order of their restricted
//! growth words. The range can be cut into chunks sharing a fixed word
//! prefix; concatenating the chunks in order reproduces the full sequence,
//! which is how parallel sweeps keep their output deterministic.

use itertools::Itertools;

use crate::partition::{BlockWord, OrderedSetPartition, SetPartition};

/// Iterator over the partitions of `[n]` into exactly `k` blocks whose
/// restricted growth word starts with a fixed prefix.
#[derive(Debug, Clone)]
pub struct Partitions {
    n: usize,
    k: usize,
    fixed: usize,
    word: Vec<usize>,
    /// `prefix_max[i]` is the largest letter among `word[..=i]`.
    prefix_max: Vec<usize>,
    state: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl Partitions {
    /// All of `P_n^k`.
    pub fn new(n: usize, k: usize) -> Self {
        let prefix: &[usize] = if n == 0 { &[] } else { &[1] };
        Self::with_prefix(n, k, prefix)
    }

    /// Partitions of `P_n^k` whose word begins with `prefix`. Yields nothing
    /// when the prefix is not a restricted growth word or cannot be completed.
    pub fn with_prefix(n: usize, k: usize, prefix: &[usize]) -> Self {
        // Every nonempty word starts with 1.
        let prefix: &[usize] = if prefix.is_empty() && n > 0 { &[1] } else { prefix };
        let mut it = Partitions {
            n,
            k,
            fixed: prefix.len(),
            word: vec![0; n],
            prefix_max: vec![0; n],
            state: State::Done,
        };
        if prefix.len() > n || k > n || (k == 0) != (n == 0) {
            return it;
        }
        let mut max = 0;
        for (i, &w) in prefix.iter().enumerate() {
            if w == 0 || w > max + 1 || w > k {
                return it;
            }
            max = max.max(w);
            it.word[i] = w;
            it.prefix_max[i] = max;
        }
        if n - prefix.len() < k - max {
            return it;
        }
        it.fill_from(prefix.len(), max);
        it.state = State::Fresh;
        it
    }

    /// Writes the lexicographically least completion of `word[..start]`.
    fn fill_from(&mut self, start: usize, mut max: usize) {
        let need = self.k - max;
        let ones = self.n - start - need;
        for i in start..self.n {
            if i < start + ones {
                self.word[i] = 1;
            } else {
                max += 1;
                self.word[i] = max;
            }
            self.prefix_max[i] = max;
        }
    }

    fn advance(&mut self) -> bool {
        let lowest = self.fixed.max(1);
        for i in (lowest..self.n).rev() {
            let before = self.prefix_max[i - 1];
            let next = self.word[i] + 1;
            if next > before + 1 || next > self.k {
                continue;
            }
            let max = before.max(next);
            if self.n - i - 1 < self.k - max {
                continue;
            }
            self.word[i] = next;
            self.prefix_max[i] = max;
            self.fill_from(i + 1, max);
            return true;
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        match self.state {
            State::Done => return None,
            State::Fresh => self.state = State::Running,
            State::Running => {
                if !self.advance() {
                    self.state = State::Done;
                    return None;
                }
            }
        }
        Some(SetPartition::from_word_unchecked(self.word.clone(), self.k))
    }
}

/// `P_n^k` in lexicographic order of restricted growth words.
pub fn enumerate_partitions(n: usize, k: usize) -> Partitions {
    Partitions::new(n, k)
}

/// Every partition of `[n]`, by number of blocks and then lexicographically.
pub fn enumerate_all(n: usize) -> impl Iterator<Item = SetPartition> {
    let ks = if n == 0 { 0..=0 } else { 1..=n };
    ks.flat_map(move |k| Partitions::new(n, k))
}

/// `OP_n^k`: for each canonical partition in order, every arrangement of its
/// blocks in lexicographic order of the block permutation.
pub fn enumerate_ordered(n: usize, k: usize) -> impl Iterator<Item = OrderedSetPartition> {
    Partitions::new(n, k).flat_map(arrangements)
}

/// All `k!` block orders of one canonical partition.
pub fn arrangements(p: SetPartition) -> impl Iterator<Item = OrderedSetPartition> {
    let k = p.num_blocks();
    (1..=k).permutations(k).map(move |order| {
        p.arrange(&order)
            .expect("permutations of 1..=k are valid block orders")
    })
}

/// Prefixes cutting `P_n^k` into contiguous lexicographic chunks.
///
/// Every prefix has length `min(n, depth)` and at least one completion.
/// Chunks are listed in lexicographic order.
pub fn chunk_prefixes(n: usize, k: usize, depth: usize) -> Vec<Vec<usize>> {
    if k > n || (k == 0) != (n == 0) {
        return Vec::new();
    }
    let len = depth.min(n);
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut word = vec![1];
    extend_prefixes(n, k, len, 1, &mut word, &mut out);
    out
}

fn extend_prefixes(
    n: usize,
    k: usize,
    len: usize,
    max: usize,
    word: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if n - word.len() < k - max {
        return;
    }
    if word.len() == len {
        out.push(word.clone());
        return;
    }
    for w in 1..=(max + 1).min(k) {
        word.push(w);
        extend_prefixes(n, k, len, max.max(w), word, out);
        word.pop();
    }
}

/// Stirling numbers of the second kind `S(n, k)` by the usual recurrence.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// Bell numbers `B(n) = sum_k S(n, k)`.
pub fn bell(n: usize) -> u128 {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::BlockWord;

    /// Every word in `[k]^n`, kept when it is a restricted growth word with
    /// exactly `k` letters in use.
    fn brute_force_rgfs(n: usize, k: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return if k == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for code in 0..k.pow(n as u32) {
            let mut c = code;
            let mut word = vec![0; n];
            for slot in word.iter_mut().rev() {
                *slot = c % k + 1;
                c /= k;
            }
            let mut max = 0;
            let ok = word.iter().all(|&w| {
                let good = w <= max + 1;
                max = max.max(w);
                good
            });
            if ok && max == k {
                out.push(word);
            }
        }
        out
    }

    #[test]
    fn matches_brute_force_in_lex_order() {
        for n in 0..=7 {
            for k in 0..=n {
                let got: Vec<Vec<usize>> = Partitions::new(n, k).map(|p| p.word().to_vec()).collect();
                assert_eq!(got, brute_force_rgfs(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(Partitions::new(4, 2).count(), 7);
        let all: Vec<String> = Partitions::new(3, 3).map(|p| p.to_string()).collect();
        assert_eq!(all, vec!["1/2/3"]);
        let one: Vec<String> = Partitions::new(3, 1).map(|p| p.to_string()).collect();
        assert_eq!(one, vec!["1,2,3"]);
        let listing: Vec<String> = Partitions::new(3, 2).map(|p| p.to_string()).collect();
        assert_eq!(listing, vec!["1,2/3", "1,3/2", "1/2,3"]);
        assert_eq!(Partitions::new(2, 0).count(), 0);
        assert_eq!(Partitions::new(2, 3).count(), 0);
        assert_eq!(Partitions::new(0, 0).collect::<Vec<_>>(), vec![SetPartition::empty()]);
    }

    #[test]
    fn ordered_counts() {
        assert_eq!(enumerate_ordered(3, 2).count(), 6);
        assert_eq!(enumerate_ordered(1, 1).count(), 1);
        let total: usize = (0..=7).map(|k| enumerate_ordered(7, k).count()).sum();
        assert_eq!(total, 47293);
    }

    #[test]
    fn chunks_concatenate_to_full_range() {
        for n in 0..=8 {
            for k in 0..=n {
                for depth in [0, 1, 2, 4, 9] {
                    let chunked: Vec<SetPartition> = chunk_prefixes(n, k, depth)
                        .iter()
                        .flat_map(|pre| Partitions::with_prefix(n, k, pre))
                        .collect();
                    let full: Vec<SetPartition> = Partitions::new(n, k).collect();
                    assert_eq!(chunked, full, "n={n} k={k} depth={depth}");
                }
            }
        }
    }

    #[test]
    fn stirling_and_bell() {
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(stirling2(0, 0), 1);
        assert_eq!(stirling2(3, 0), 0);
        assert_eq!(bell(9), 21147);
        assert_eq!(bell(12), 4213597);
        for n in 0..=8 {
            assert_eq!(enumerate_all(n).count() as u128, bell(n));
        }
    }
}
