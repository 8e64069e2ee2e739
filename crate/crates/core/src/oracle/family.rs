//! Explicit unrelated families of full segment posets built from
//! fundamental pairs.
//!
//! `[n]` is cut into blocks `M_0, .., M_{q-1}` of size `r` and a remainder.
//! A fundamental pair `(i, B)` has `|B| = h`, `B` disjoint from `M_i`, and
//! `|B ∩ M_j|` at most `a` or at least `b` for every `j < i`. Each pair gives
//! the copy `U(i, B) = {B ∪ X : X ⊆ M_i, a < |X| < b}`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimates::EstimateParams;
use crate::oracle::poset::{fsp_masks, FinitePoset};

/// Largest ground set for which families are materialised.
pub const FAMILY_N_MAX: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    pub n: u64,
    pub r: u64,
    /// `M_j = {jr, .., jr + r - 1}` for `j < q`.
    pub blocks: Vec<u64>,
    pub remainder: u64,
}

impl BlockPartition {
    pub fn canonical(n: u64, r: u64) -> Result<Self> {
        if r == 0 || r > n || n > 63 {
            return Err(Error::Constraint(format!("need 1 <= r <= n <= 63, got r={r} n={n}")));
        }
        let q = n / r;
        let block = (1u64 << r) - 1;
        let blocks: Vec<u64> = (0..q).map(|j| block << (j * r)).collect();
        let remainder = ((1u64 << n) - 1) & !blocks.iter().fold(0, |acc, b| acc | b);
        Ok(BlockPartition { n, r, blocks, remainder })
    }

    pub fn q(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FundamentalPair {
    pub i: usize,
    pub b: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetCopy {
    pub pair: FundamentalPair,
    pub members: Vec<u64>,
}

impl PosetCopy {
    pub fn poset(&self) -> FinitePoset {
        FinitePoset::from_masks(&self.members)
    }
}

/// Spreads the low bits of `bits` over the set bits of `within`.
fn deposit(bits: u64, within: u64) -> u64 {
    let mut out = 0;
    let mut w = within;
    let mut k = 0;
    while w != 0 {
        let low = w & w.wrapping_neg();
        if bits >> k & 1 == 1 {
            out |= low;
        }
        w &= w - 1;
        k += 1;
    }
    out
}

/// Every subset of `within` with exactly `size` elements.
fn subsets_of_size(within: u64, size: u32) -> Vec<u64> {
    let width = within.count_ones();
    if size > width {
        return Vec::new();
    }
    (0u64..1 << width).filter(|s| s.count_ones() == size).map(|s| deposit(s, within)).collect()
}

/// All fundamental pairs for the canonical block partition, by `i` then by
/// the choice on earlier blocks and the rest.
pub fn fundamental_pairs(params: &EstimateParams) -> Result<(BlockPartition, Vec<FundamentalPair>)> {
    params.validate()?;
    let EstimateParams { r, n, .. } = *params;
    if n > FAMILY_N_MAX {
        return Err(Error::TooLarge(format!("families over n = {n} (limit {FAMILY_N_MAX})")));
    }
    let part = BlockPartition::canonical(n, r)?;
    let h = params.base_size();
    let mut pairs = Vec::new();
    if h < 0 {
        return Ok((part, pairs));
    }
    let h = h as u32;
    let extremal: Vec<u32> = params.extremal_sizes().into_iter().map(|s| s as u32).collect();
    for i in 0..part.q() {
        // partial choices on the blocks before i
        let mut prefixes: Vec<u64> = vec![0];
        for block in &part.blocks[..i] {
            let mut next = Vec::new();
            for &size in &extremal {
                for s in subsets_of_size(*block, size) {
                    next.extend(prefixes.iter().map(|p| p | s));
                }
            }
            prefixes = next;
        }
        prefixes.sort_unstable();
        let rest = part.blocks[i + 1..].iter().fold(part.remainder, |acc, m| acc | m);
        for p in prefixes {
            let used = p.count_ones();
            if used > h {
                continue;
            }
            for s in subsets_of_size(rest, h - used) {
                pairs.push(FundamentalPair { i, b: p | s });
            }
        }
    }
    Ok((part, pairs))
}

/// The family `{U(i, B)}` over all fundamental pairs; its size is the
/// general lower estimate `f<p, r, a, b>(n)`.
pub fn build_unrelated_family(params: &EstimateParams) -> Result<Vec<PosetCopy>> {
    let (part, pairs) = fundamental_pairs(params)?;
    let segment = fsp_masks(params.r, params.a, params.b)?;
    Ok(pairs
        .into_iter()
        .map(|pair| {
            let block = part.blocks[pair.i];
            let members = segment.iter().map(|&x| pair.b | deposit(x, block)).collect();
            PosetCopy { pair, members }
        })
        .collect())
}

/// Every member of `u` is incomparable with every member of `v`.
pub fn unrelated(u: &[u64], v: &[u64]) -> bool {
    u.iter().all(|&x| v.iter().all(|&y| x & !y != 0 && y & !x != 0))
}

/// All distinct pairs of copies are unrelated.
pub fn pairwise_unrelated(copies: &[PosetCopy]) -> bool {
    (0..copies.len()).into_par_iter().all(|i| copies[i + 1..].iter().all(|c| unrelated(&copies[i].members, &c.members)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::poset::build_fsp;

    fn params(p: i64, r: u64, a: u64, b: u64, n: u64) -> EstimateParams {
        EstimateParams::new(r, a, b, p, n).unwrap()
    }

    #[test]
    fn deposit_and_subsets() {
        assert_eq!(deposit(0b101, 0b1110), 0b1010);
        assert_eq!(subsets_of_size(0b1011, 2), vec![0b0011, 0b1001, 0b1010]);
        assert!(subsets_of_size(0b1, 2).is_empty());
    }

    #[test]
    fn canonical_blocks() {
        let part = BlockPartition::canonical(8, 3).unwrap();
        assert_eq!(part.blocks, vec![0b111, 0b111000]);
        assert_eq!(part.remainder, 0b11000000);
    }

    #[test]
    fn family_examples() {
        let crowns8 = build_unrelated_family(&params(0, 3, 0, 3, 8)).unwrap();
        assert_eq!(crowns8.len(), 11);
        assert!(pairwise_unrelated(&crowns8));
        assert_eq!(build_unrelated_family(&params(0, 3, 0, 3, 5)).unwrap().len(), 2);
        assert_eq!(build_unrelated_family(&params(0, 4, 0, 4, 9)).unwrap().len(), 10);
        assert_eq!(build_unrelated_family(&params(0, 4, 0, 4, 8)).unwrap().len(), 6);
        assert!(build_unrelated_family(&params(0, 3, 0, 3, 17)).is_err());
    }

    #[test]
    fn copies_are_full_segment_posets() {
        let target = build_fsp(4, 1, 4).unwrap();
        for copy in build_unrelated_family(&params(1, 4, 1, 4, 11)).unwrap() {
            assert!(copy.poset().is_isomorphic(&target));
            let block = BlockPartition::canonical(11, 4).unwrap().blocks[copy.pair.i];
            assert_eq!(copy.pair.b & block, 0);
        }
    }
}
