//! Finite lattices: explicit tables, free distributive lattices on monotone
//! Boolean functions, join-irreducibles, closure and generating sets.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{out_of_range, Error, Result};
use crate::oracle::poset::{build_fsp, FinitePoset};

pub trait FiniteLattice: Sync {
    fn size(&self) -> usize;
    fn join(&self, x: usize, y: usize) -> usize;
    fn meet(&self, x: usize, y: usize) -> usize;

    fn leq(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }
}

/// A lattice given by its full join and meet tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTable {
    size: usize,
    join: Vec<u32>,
    meet: Vec<u32>,
}

/// Largest lattice for which explicit tables are built.
pub const TABLE_SIZE_MAX: usize = 4096;

impl LatticeTable {
    pub fn from_fn(
        size: usize,
        join: impl Fn(usize, usize) -> usize,
        meet: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        if size == 0 || size > TABLE_SIZE_MAX {
            return Err(Error::TooLarge(format!("lattice tables of size {size} (limit {TABLE_SIZE_MAX})")));
        }
        let mut jt = Vec::with_capacity(size * size);
        let mut mt = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                jt.push(join(x, y) as u32);
                mt.push(meet(x, y) as u32);
            }
        }
        Ok(LatticeTable { size, join: jt, meet: mt })
    }

    pub fn from_lattice(lat: &dyn FiniteLattice) -> Result<Self> {
        LatticeTable::from_fn(lat.size(), |x, y| lat.join(x, y), |x, y| lat.meet(x, y))
    }

    /// The powerset lattice of an `n`-element set; element `i` is the subset with mask `i`.
    pub fn powerset(n: u32) -> Result<Self> {
        if n > 12 {
            return Err(out_of_range("n", n, "0..=12"));
        }
        LatticeTable::from_fn(1 << n, |x, y| x | y, |x, y| x & y)
    }

    /// The `n`-element chain.
    pub fn chain(n: usize) -> Result<Self> {
        LatticeTable::from_fn(n, |x, y| x.max(y), |x, y| x.min(y))
    }

    /// Direct product; the pair `(x, y)` has index `x * other.size + y`.
    pub fn product(&self, other: &LatticeTable) -> Result<Self> {
        let m = other.size;
        let size = self.size.checked_mul(m).filter(|&s| s <= TABLE_SIZE_MAX);
        let size = size.ok_or_else(|| Error::TooLarge(format!("product of sizes {} and {m}", self.size)))?;
        LatticeTable::from_fn(
            size,
            |a, b| self.join(a / m, b / m) * m + other.join(a % m, b % m),
            |a, b| self.meet(a / m, b / m) * m + other.meet(a % m, b % m),
        )
    }

    /// The direct power `self^k`, `k >= 1`.
    pub fn power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(out_of_range("k", k, ">= 1"));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Commutativity, associativity, idempotence and absorption, exhaustively.
    pub fn check_laws(&self) -> bool {
        let n = self.size;
        let elems = 0..n;
        elems.into_par_iter().all(|x| {
            (0..n).all(|y| {
                let j = self.join(x, y);
                let m = self.meet(x, y);
                j == self.join(y, x)
                    && m == self.meet(y, x)
                    && self.join(x, m) == x
                    && self.meet(x, j) == x
                    && (x != y || (j == x && m == x))
                    && (0..n).all(|z| {
                        self.join(j, z) == self.join(x, self.join(y, z))
                            && self.meet(m, z) == self.meet(x, self.meet(y, z))
                    })
            })
        })
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.size;
        (0..n).into_par_iter().all(|x| {
            (0..n).all(|y| (0..n).all(|z| self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))))
        })
    }
}

impl FiniteLattice for LatticeTable {
    fn size(&self) -> usize {
        self.size
    }

    fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y] as usize
    }

    fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y] as usize
    }
}

/// The free distributive lattice `FD(r)`: nonconstant monotone Boolean
/// functions of `r` variables, as `2^r`-bit truth tables, ordered pointwise.
#[derive(Debug, Clone)]
pub struct FreeDistributive {
    r: u32,
    masks: Vec<u64>,
    index: HashMap<u64, usize>,
    generators: Vec<usize>,
}

/// All monotone Boolean functions of `k` variables, including the constants.
fn monotone_functions(k: u32) -> Vec<u64> {
    if k == 0 {
        return vec![0, 1];
    }
    let lower = monotone_functions(k - 1);
    let half = 1u32 << (k - 1);
    let mut out = Vec::new();
    for &f0 in &lower {
        for &f1 in &lower {
            // f(y) with the top variable off is f0, with it on is f1, and f0 <= f1
            if f0 & !f1 == 0 {
                out.push(f0 | (f1 << half));
            }
        }
    }
    out.sort_unstable();
    out
}

pub const FD_RANK_MAX: u32 = 5;

/// Builds `FD(r)` together with its free generators (the projections).
pub fn build_fd(r: u32) -> Result<FreeDistributive> {
    if !(2..=FD_RANK_MAX).contains(&r) {
        return Err(out_of_range("r", r, &format!("2..={FD_RANK_MAX}")));
    }
    let points = 1u32 << r;
    let full = if points == 64 { u64::MAX } else { (1u64 << points) - 1 };
    let masks: Vec<u64> = monotone_functions(r).into_iter().filter(|&m| m != 0 && m != full).collect();
    let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let generators = (0..r)
        .map(|i| {
            let proj = (0..points).filter(|y| y >> i & 1 == 1).fold(0u64, |acc, y| acc | 1 << y);
            index[&proj]
        })
        .collect();
    Ok(FreeDistributive { r, masks, index, generators })
}

impl FreeDistributive {
    pub fn rank(&self) -> u32 {
        self.r
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mask(&self, x: usize) -> u64 {
        self.masks[x]
    }

    pub fn element(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }
}

impl FiniteLattice for FreeDistributive {
    fn size(&self) -> usize {
        self.masks.len()
    }

    fn join(&self, x: usize, y: usize) -> usize {
        self.index[&(self.masks[x] | self.masks[y])]
    }

    fn meet(&self, x: usize, y: usize) -> usize {
        self.index[&(self.masks[x] & self.masks[y])]
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.masks[x] & !self.masks[y] == 0
    }
}

/// For every element, the elements it covers.
pub fn lower_covers(lat: &dyn FiniteLattice) -> Vec<Vec<usize>> {
    let n = lat.size();
    (0..n)
        .into_par_iter()
        .map(|x| {
            let below: Vec<usize> = (0..n).filter(|&y| y != x && lat.leq(y, x)).collect();
            below.iter().copied().filter(|&y| !below.iter().any(|&z| z != y && lat.leq(y, z))).collect()
        })
        .collect()
}

/// Elements with exactly one lower cover, ascending.
pub fn join_irreducible_elements(lat: &dyn FiniteLattice) -> Vec<usize> {
    let n = lat.size();
    (0..n)
        .into_par_iter()
        .filter(|&x| {
            // x is join-irreducible iff it is not the join of the elements strictly below it
            let mut acc: Option<usize> = None;
            for y in 0..n {
                if y != x && lat.leq(y, x) {
                    acc = Some(acc.map_or(y, |a| lat.join(a, y)));
                }
            }
            acc.is_some_and(|a| a != x)
        })
        .collect()
}

/// The poset `J(L)` of join-irreducible elements.
pub fn join_irreducibles(lat: &dyn FiniteLattice) -> (FinitePoset, Vec<usize>) {
    let elems = join_irreducible_elements(lat);
    let poset = FinitePoset::from_relation(elems.len(), |i, j| lat.leq(elems[i], elems[j]))
        .expect("a lattice order restricts to a partial order");
    (poset, elems)
}

/// Whether `J(FD(r))` is order-isomorphic to `FSP(r, 0, r)`.
pub fn check_lemma(r: u32) -> Result<bool> {
    let fd = build_fd(r)?;
    let (j, _) = join_irreducibles(&fd);
    Ok(j.is_isomorphic(&build_fsp(u64::from(r), 0, u64::from(r))?))
}

/// The sublattice generated by `seed`, as a sorted list of elements.
pub fn closure(lat: &dyn FiniteLattice, seed: &[usize]) -> Vec<usize> {
    let mut member = vec![false; lat.size()];
    let mut elems = Vec::new();
    for &s in seed {
        if !member[s] {
            member[s] = true;
            elems.push(s);
        }
    }
    let mut next = 0;
    while next < elems.len() {
        let x = elems[next];
        next += 1;
        let mut i = 0;
        while i < next {
            let y = elems[i];
            i += 1;
            for z in [lat.join(x, y), lat.meet(x, y)] {
                if !member[z] {
                    member[z] = true;
                    elems.push(z);
                }
            }
        }
    }
    elems.sort_unstable();
    elems
}

fn generates(lat: &dyn FiniteLattice, seed: &[usize]) -> bool {
    closure(lat, seed).len() == lat.size()
}

/// Default budget of closure computations for [`min_generating_size`].
pub const CLOSURE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSize {
    /// The minimum, or a certified lower bound when `lower_bound_only`.
    pub size: usize,
    /// First generating set of that size in colexicographic order.
    pub witness: Option<Vec<usize>>,
    pub lower_bound_only: bool,
    pub closure_calls: u64,
}

/// Calls `visit` on every `m`-subset of `0..n` whose largest element is `top`,
/// in colexicographic order, until it returns `true`.
fn colex_with_top(n: usize, m: usize, top: usize, mut visit: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    debug_assert!(top < n && m >= 1);
    let k = m - 1;
    if k > top {
        return None;
    }
    let mut c: Vec<usize> = (0..k).collect();
    c.push(top);
    loop {
        if visit(&c) {
            return Some(c);
        }
        // advance the first k entries; c[k] = top acts as the sentinel
        let mut i = 0;
        while i < k && c[i] + 1 == c[i + 1] {
            i += 1;
        }
        if i == k {
            return None;
        }
        c[i] += 1;
        for (j, slot) in c.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
}

/// Smallest `m` such that some `m` elements generate the whole lattice.
///
/// Sizes are tried in increasing order, subsets in colexicographic order.
/// If the number of closure computations would exceed `cap`, the search
/// stops and the result is a lower bound only.
pub fn min_generating_size(lat: &dyn FiniteLattice, cap: u64) -> GeneratingSize {
    let n = lat.size();
    let calls = AtomicU64::new(0);
    for m in 1..=n {
        let exhausted = AtomicBool::new(false);
        let found = (m - 1..n).into_par_iter().find_map_first(|top| {
            colex_with_top(n, m, top, |s| {
                if calls.fetch_add(1, Ordering::Relaxed) >= cap {
                    exhausted.store(true, Ordering::Relaxed);
                    return true;
                }
                generates(lat, s)
            })
            .filter(|_| !exhausted.load(Ordering::Relaxed))
        });
        let closure_calls = calls.load(Ordering::Relaxed).min(cap);
        if exhausted.load(Ordering::Relaxed) {
            return GeneratingSize { size: m, witness: None, lower_bound_only: true, closure_calls };
        }
        if let Some(w) = found {
            return GeneratingSize { size: m, witness: Some(w), lower_bound_only: false, closure_calls };
        }
    }
    unreachable!("the whole lattice generates itself")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dedekind(k: u32) -> usize {
        monotone_functions(k).len()
    }

    #[test]
    fn dedekind_numbers() {
        assert_eq!((0..=5).map(dedekind).collect::<Vec<_>>(), vec![2, 3, 6, 20, 168, 7581]);
    }

    #[test]
    fn fd_sizes_and_generators() {
        for (r, size) in [(2, 4), (3, 18), (4, 166), (5, 7579)] {
            let fd = build_fd(r).unwrap();
            assert_eq!(fd.size(), size);
            assert_eq!(fd.generators().len(), r as usize);
            assert_eq!(closure(&fd, fd.generators()).len(), size, "r={r}");
        }
        assert!(build_fd(1).is_err());
        assert!(build_fd(6).is_err());
    }

    #[test]
    fn fd_tables_satisfy_lattice_laws() {
        for r in 2..=3 {
            let t = LatticeTable::from_lattice(&build_fd(r).unwrap()).unwrap();
            assert!(t.check_laws());
            assert!(t.is_distributive());
        }
        let t4 = LatticeTable::from_lattice(&build_fd(4).unwrap()).unwrap();
        assert!(t4.check_laws());
    }

    #[test]
    fn non_distributive_lattice_detected() {
        // M3: bottom 0, atoms 1..=3, top 4
        let join = |x: usize, y: usize| match (x, y) {
            _ if x == y => x,
            (0, z) | (z, 0) => z,
            _ => 4,
        };
        let meet = |x: usize, y: usize| match (x, y) {
            _ if x == y => x,
            (4, z) | (z, 4) => z,
            _ => 0,
        };
        let m3 = LatticeTable::from_fn(5, join, meet).unwrap();
        assert!(m3.check_laws());
        assert!(!m3.is_distributive());
    }

    #[test]
    fn join_irreducible_examples() {
        let (j3, _) = join_irreducibles(&build_fd(3).unwrap());
        assert_eq!(j3.size(), 6);
        assert!(j3.is_isomorphic(&crate::oracle::poset::crown()));
        let (j2, _) = join_irreducibles(&build_fd(2).unwrap());
        assert!(j2.is_isomorphic(&FinitePoset::antichain(2)));
        let (jp, elems) = join_irreducibles(&LatticeTable::powerset(3).unwrap());
        assert_eq!(elems, vec![1, 2, 4]);
        assert!(jp.is_isomorphic(&FinitePoset::antichain(3)));
    }

    #[test]
    fn one_lower_cover_characterisation() {
        for lat in [
            LatticeTable::from_lattice(&build_fd(3).unwrap()).unwrap(),
            LatticeTable::powerset(4).unwrap(),
            LatticeTable::chain(5).unwrap(),
        ] {
            let covers = lower_covers(&lat);
            let by_covers: Vec<usize> = (0..lat.size()).filter(|&x| covers[x].len() == 1).collect();
            assert_eq!(join_irreducible_elements(&lat), by_covers);
        }
    }

    #[test]
    fn lemma_small_ranks() {
        for r in 2..=4 {
            assert!(check_lemma(r).unwrap(), "r={r}");
        }
    }

    #[test]
    fn closure_examples() {
        let fd3 = build_fd(3).unwrap();
        let g = fd3.generators();
        assert_eq!(closure(&fd3, &[g[0]]), vec![g[0]]);
        assert_eq!(closure(&fd3, &g[..2]).len(), 4);
        let p2 = LatticeTable::powerset(2).unwrap();
        assert_eq!(closure(&p2, &[1, 2]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn colex_enumeration_is_complete() {
        let mut all = Vec::new();
        for top in 2..6 {
            colex_with_top(6, 3, top, |s| {
                all.push(s.to_vec());
                false
            });
        }
        assert_eq!(all.len(), 20);
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        assert_eq!(all, sorted);
        assert!(all.iter().all(|s| s.windows(2).all(|w| w[0] < w[1])));
        let mut singles = Vec::new();
        for top in 0..4 {
            colex_with_top(4, 1, top, |s| {
                singles.push(s[0]);
                false
            });
        }
        assert_eq!(singles, vec![0, 1, 2, 3]);
    }

    #[test]
    fn generating_sizes() {
        let fd3 = build_fd(3).unwrap();
        let g = min_generating_size(&fd3, CLOSURE_CAP);
        assert_eq!(g.size, 3);
        assert!(!g.lower_bound_only);
        let w = g.witness.unwrap();
        assert_eq!(closure(&fd3, &w).len(), 18);

        let chain = LatticeTable::chain(4).unwrap();
        assert_eq!(min_generating_size(&chain, CLOSURE_CAP).size, 4);

        let capped = min_generating_size(&fd3, 10);
        assert!(capped.lower_bound_only);
        assert!(capped.size <= 3);
    }
}
