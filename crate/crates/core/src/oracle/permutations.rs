//! Permutation sets: a permutation of `[n]` belongs to the permutation set
//! of `X` when its first `|X|` entries form `X`. Incomparable sets have
//! disjoint permutation sets.

use crate::error::{Error, Result};
use crate::oracle::sperner::CrownCopy;

/// Largest `n` for which all `n!` permutations are enumerated.
pub const PERMUTATION_N_MAX: u64 = 8;

/// Calls `visit` with the prefix masks of every permutation of `0..n`,
/// `prefixes[k]` being the set of the first `k` entries.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[u64])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut prefixes = vec![0u64; n + 1];
    loop {
        for k in 0..n {
            prefixes[k + 1] = prefixes[k] | 1 << perm[k];
        }
        visit(&prefixes);
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("a larger entry exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

fn check_n(n: u64) -> Result<()> {
    if n > PERMUTATION_N_MAX {
        return Err(Error::TooLarge(format!("{n}! permutations (limit n <= {PERMUTATION_N_MAX})")));
    }
    Ok(())
}

/// Number of permutations of `[n]` whose initial segment of length `|X|` is `X`.
pub fn permutation_set_size(n: u64, x: u64) -> Result<u64> {
    check_n(n)?;
    let mut count = 0;
    let k = x.count_ones() as usize;
    for_each_permutation(n as usize, |pre| count += u64::from(pre[k] == x));
    Ok(count)
}

/// Number of permutations whose permutation set meets both `x` and `y`.
pub fn common_permutations(n: u64, x: u64, y: u64) -> Result<u64> {
    check_n(n)?;
    let (kx, ky) = (x.count_ones() as usize, y.count_ones() as usize);
    let mut count = 0;
    for_each_permutation(n as usize, |pre| count += u64::from(pre[kx] == x && pre[ky] == y));
    Ok(count)
}

/// Size of the union of the permutation sets of the six members of `c`.
pub fn gset_size_bruteforce(n: u64, c: &CrownCopy) -> Result<u64> {
    check_n(n)?;
    let members = c.members();
    if members.iter().any(|&m| m >> n != 0) {
        return Err(Error::Constraint(format!("crown copy does not live in the powerset of [{n}]")));
    }
    let sized: Vec<(usize, u64)> = members.iter().map(|&m| (m.count_ones() as usize, m)).collect();
    let mut count = 0;
    for_each_permutation(n as usize, |pre| count += u64::from(sized.iter().any(|&(k, m)| pre[k] == m)));
    Ok(count)
}

/// The normal-form crown on `[n]` with `T = {0..t}` followed by consecutive
/// blocks `A`, `B`, `C` of the given sizes.
pub fn crown_with_shape(n: u64, t: u64, a: u64, b: u64, c: u64) -> Result<CrownCopy> {
    if t + a + b + c > n || n > 63 {
        return Err(Error::Constraint(format!("shape ({t},{a},{b},{c}) does not fit in [{n}]")));
    }
    let block = |from: u64, len: u64| ((1u64 << len) - 1) << from;
    CrownCopy::new(block(0, t), block(t, a), block(t + a, b), block(t + a + b, c))
}
