//! The mirror involution `phi` exchanging `mak` and `mak'`, the block-exchange
//! maps `phi_i` acting inside a fixed opener class, and the level-preserving
//! matching of openers to closers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{classify, trace_profile, BlockWord, SetPartition};

/// Elements paired with their `gamma` values, one column per element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaMatrix {
    pub values: Vec<usize>,
    pub gamma: Vec<usize>,
}

/// Everything `phi` computed on the way from `source` to `image`: the closer
/// and passant matrices of the source and the mirrored ones fed to the
/// insertion step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiCertificate {
    pub source: SetPartition,
    pub image: SetPartition,
    pub f: GammaMatrix,
    pub p: GammaMatrix,
    pub f_prime: GammaMatrix,
    pub p_prime: GammaMatrix,
}

fn mirror(n: usize, xs: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = xs.iter().map(|&x| n + 1 - x).collect();
    out.sort_unstable();
    out
}

struct Growing {
    elements: Vec<usize>,
    complete: bool,
}

/// Applies `phi` and returns the image with its certificate.
///
/// The closer and passant classes are mirrored `x -> n + 1 - x`, openers and
/// closers trade places, and the image is grown from one singleton per
/// mirrored opener: the mirrored closers and passants are inserted in
/// increasing order, each into the `gamma`-th incomplete block from the left.
/// The passant `gamma` row is carried over reversed. The mirror of an opener
/// `a` closes with the `gamma` of the closer matched to `a` by
/// [`match_openers_closers`], so the closer row is only rearranged.
pub fn phi_with_certificate(p: &SetPartition) -> Result<PhiCertificate> {
    let n = p.n();
    let class = classify(p);
    let profile = trace_profile(p);
    let gamma_of = |x: usize| profile.gamma[x - 1];

    let f = GammaMatrix {
        values: class.closer_nonsingletons.clone(),
        gamma: class.closer_nonsingletons.iter().map(|&x| gamma_of(x)).collect(),
    };
    let pm = GammaMatrix {
        values: class.passants.clone(),
        gamma: class.passants.iter().map(|&x| gamma_of(x)).collect(),
    };

    let singles = mirror(n, &class.singletons);
    let openers_s = mirror(n, &class.closer_nonsingletons);
    let closers_s = mirror(n, &class.opener_nonsingletons);
    let passants = mirror(n, &class.passants);

    let matching = match_openers_closers(p)?;
    let f_prime = GammaMatrix {
        values: closers_s.clone(),
        gamma: closers_s
            .iter()
            .map(|&x| gamma_of(matching[&(n + 1 - x)]))
            .collect(),
    };
    let p_prime = GammaMatrix {
        values: passants.clone(),
        gamma: pm.gamma.iter().rev().copied().collect(),
    };

    let mut target_gamma = vec![0; n + 1];
    let mut closes = vec![false; n + 1];
    for (&x, &g) in f_prime.values.iter().zip(&f_prime.gamma) {
        target_gamma[x] = g;
        closes[x] = true;
    }
    for (&x, &g) in p_prime.values.iter().zip(&p_prime.gamma) {
        target_gamma[x] = g;
    }

    let mut openers: Vec<usize> = openers_s.iter().chain(&singles).copied().collect();
    openers.sort_unstable();
    let mut blocks: Vec<Growing> = openers
        .iter()
        .map(|&o| Growing {
            elements: vec![o],
            complete: singles.binary_search(&o).is_ok(),
        })
        .collect();

    let mut inserts: Vec<usize> = closers_s.iter().chain(&passants).copied().collect();
    inserts.sort_unstable();
    for x in inserts {
        let g = target_gamma[x];
        let block = blocks
            .iter_mut()
            .filter(|b| !b.complete)
            .nth(g.wrapping_sub(1))
            .ok_or_else(|| {
                Error::Internal(format!(
                    "phi on {p}: no incomplete block number {g} when inserting {x}"
                ))
            })?;
        if block.elements[0] > x {
            return Err(Error::Internal(format!(
                "phi on {p}: block starting at {} chosen for smaller element {x}",
                block.elements[0]
            )));
        }
        block.elements.push(x);
        block.complete = closes[x];
    }
    if let Some(open) = blocks.iter().find(|b| !b.complete) {
        return Err(Error::Internal(format!(
            "phi on {p}: block starting at {} never closed",
            open.elements[0]
        )));
    }

    let blocks: Vec<Vec<usize>> = blocks.into_iter().map(|b| b.elements).collect();
    let image = SetPartition::from_blocks(&blocks)?;
    Ok(PhiCertificate {
        source: p.clone(),
        image,
        f,
        p: pm,
        f_prime,
        p_prime,
    })
}

/// The involution `phi` on `P_n^k` with `mak(p) = mak'(phi(p))`.
pub fn phi(p: &SetPartition) -> Result<SetPartition> {
    phi_with_certificate(p).map(|c| c.image)
}

/// The block exchange `phi_i` on a partition with `k + 1` blocks, `1 <= i <= k`.
///
/// Only blocks `i` and `i + 1` change. With `g` the largest element of block
/// `i + 1` and `T` the elements of block `i` above `g`: if block `i + 1` has
/// more than one element, `g` moves into block `i` and `T` into block
/// `i + 1`; otherwise `T` joins the singleton `{g}`. The opener set is
/// preserved.
pub fn phi_i(p: &SetPartition, i: usize) -> Result<SetPartition> {
    let blocks = p.blocks();
    if i == 0 || i >= blocks.len() {
        return Err(Error::BlockOutOfRange {
            index: i,
            max: blocks.len().saturating_sub(1),
        });
    }
    let left = &blocks[i - 1];
    let right = &blocks[i];
    let g = *right.last().expect("blocks are non-empty");
    let tail: Vec<usize> = left.iter().copied().filter(|&a| a > g).collect();
    if right.len() == 1 && tail.is_empty() {
        return Ok(p.clone());
    }

    let mut new_left: Vec<usize> = left.iter().copied().filter(|&a| a < g).collect();
    let mut new_right: Vec<usize>;
    if right.len() > 1 {
        new_left.push(g);
        new_right = right[..right.len() - 1].to_vec();
    } else {
        new_right = vec![g];
    }
    new_right.extend(&tail);
    new_left.sort_unstable();
    new_right.sort_unstable();

    let mut out = blocks.clone();
    out[i - 1] = new_left;
    out[i] = new_right;
    let image = SetPartition::from_blocks(&out)?;
    if image.blocks() != out {
        return Err(Error::ContractViolation(format!(
            "phi_{i} on {p} reorders blocks: {image}"
        )));
    }
    if image.block_bounds().0 != p.block_bounds().0 {
        return Err(Error::ContractViolation(format!(
            "phi_{i} on {p} changes the opener set: {image}"
        )));
    }
    Ok(image)
}

/// Greedy matching of non-singleton openers to non-singleton closers: each
/// opener `a`, taken in increasing order, gets the smallest unused closer
/// `a'` with `l_a + 1 = l_a'`.
pub fn match_openers_closers(p: &SetPartition) -> Result<BTreeMap<usize, usize>> {
    let class = classify(p);
    let profile = trace_profile(p);
    let level = |x: usize| profile.l[x - 1];
    let mut used = vec![false; class.closer_nonsingletons.len()];
    let mut matching = BTreeMap::new();
    for &a in &class.opener_nonsingletons {
        let want = level(a) + 1;
        let slot = class
            .closer_nonsingletons
            .iter()
            .enumerate()
            .find(|&(idx, &c)| !used[idx] && level(c) == want)
            .map(|(idx, _)| idx)
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no closer at level {want} left for opener {a} in {p}"
                ))
            })?;
        used[slot] = true;
        matching.insert(a, class.closer_nonsingletons[slot]);
    }
    Ok(matching)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn phi_worked_example() {
        let cert = phi_with_certificate(&part("1,4,8/2/3,7,9/5,6")).unwrap();
        assert_eq!(cert.image.to_string(), "1,6,7/2,3,9/4,5/8");
        assert_eq!(cert.f.values, vec![6, 8, 9]);
        assert_eq!(cert.f.gamma, vec![3, 1, 1]);
        assert_eq!(cert.p.values, vec![4, 7]);
        assert_eq!(cert.p.gamma, vec![1, 2]);
        assert_eq!(cert.f_prime.values, vec![5, 7, 9]);
        assert_eq!(cert.f_prime.gamma, vec![3, 1, 1]);
        assert_eq!(cert.p_prime.values, vec![3, 6]);
        assert_eq!(cert.p_prime.gamma, vec![2, 1]);
        assert_eq!(phi(&cert.image).unwrap(), cert.source);
    }

    #[test]
    fn phi_fixes_all_singletons() {
        for n in 0..6 {
            let p = SetPartition::from_word((1..=n).collect()).unwrap();
            assert_eq!(phi(&p).unwrap(), p);
        }
    }

    #[test]
    fn phi_i_worked_orbit() {
        let orbit = [
            "1,4,8/2/3/5,6,7,9",
            "1,4,8/2/3,9/5,6,7",
            "1,4,8/2/3,7/5,6,9",
            "1,4,8/2/3,7,9/5,6",
            "1,4,8/2/3,6/5,7,9",
            "1,4,8/2/3,6,9/5,7",
            "1,4,8/2/3,6,7/5,9",
            "1,4,8/2/3,6,7,9/5",
        ];
        for j in 0..orbit.len() {
            let next = orbit[(j + 1) % orbit.len()];
            assert_eq!(phi_i(&part(orbit[j]), 3).unwrap().to_string(), next);
        }
    }

    #[test]
    fn phi_i_identity_case() {
        let p = part("1,3/2,4/5");
        assert_eq!(phi_i(&p, 2).unwrap(), p);
    }

    #[test]
    fn phi_i_range() {
        let p = part("1/2/3");
        assert_eq!(
            phi_i(&p, 3),
            Err(Error::BlockOutOfRange { index: 3, max: 2 })
        );
        assert!(phi_i(&p, 0).is_err());
    }

    #[test]
    fn matching_example() {
        let m = match_openers_closers(&part("1,4,8/2/3,7,9/5,6")).unwrap();
        assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![(1, 9), (3, 8), (5, 6)]);
        let pair = match_openers_closers(&part("1,2")).unwrap();
        assert_eq!(pair.into_iter().collect::<Vec<_>>(), vec![(1, 2)]);
        assert!(match_openers_closers(&part("1/2/3")).unwrap().is_empty());
    }
}
