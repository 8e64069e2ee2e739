//! Exact Sperner numbers `Sp(U, n)` for tiny instances: enumerate copies of
//! `U` in the powerset of `[n]` and find a largest set of pairwise
//! unrelated copies by maximum clique search.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::family::unrelated;
use crate::oracle::poset::{crown, FinitePoset};

/// Largest ground set for exact Sperner numbers.
pub const SP_N_MAX: u64 = 6;
/// Largest poset accepted by the general path.
pub const SP_POSET_MAX: usize = 8;
/// Copies beyond this make the clique search impractical.
pub const COPY_LIMIT: usize = 20_000;

/// A crown copy in normal form: pairwise disjoint `T`, `A`, `B`, `C` with
/// `A`, `B`, `C` nonempty; the copy is `T∪A, T∪B, T∪C` below
/// `T∪A∪B, T∪A∪C, T∪B∪C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrownCopy {
    pub t: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl CrownCopy {
    pub fn new(t: u64, a: u64, b: u64, c: u64) -> Result<Self> {
        let parts = [t, a, b, c];
        let disjoint = (0..4).all(|i| (i + 1..4).all(|j| parts[i] & parts[j] == 0));
        if !disjoint || a == 0 || b == 0 || c == 0 {
            return Err(Error::Constraint("crown parts must be disjoint with A, B, C nonempty".into()));
        }
        Ok(CrownCopy { t, a, b, c })
    }

    pub fn members(&self) -> [u64; 6] {
        let CrownCopy { t, a, b, c } = *self;
        [t | a, t | b, t | c, t | a | b, t | a | c, t | b | c]
    }

    /// `(|T|, |A|, |B|, |C|)`.
    pub fn shape(&self) -> (u64, u64, u64, u64) {
        let w = |m: u64| u64::from(m.count_ones());
        (w(self.t), w(self.a), w(self.b), w(self.c))
    }
}

/// All normal-form crown copies in the powerset of `[n]`, each once
/// (`A < B < C` as masks), in lexicographic order of `(T, A, B, C)`.
pub fn crown_copies(n: u64) -> Result<Vec<CrownCopy>> {
    if n > 12 {
        return Err(Error::TooLarge(format!("crown copies over n = {n}")));
    }
    let mut out = Vec::new();
    // label each point 0 = unused, 1 = T, 2 = A, 3 = B, 4 = C
    let total = 5u64.pow(n as u32);
    for code in 0..total {
        let mut parts = [0u64; 5];
        let mut c = code;
        for point in 0..n {
            parts[(c % 5) as usize] |= 1 << point;
            c /= 5;
        }
        let [_, t, a, b, cc] = parts;
        if a != 0 && b != 0 && cc != 0 && a < b && b < cc {
            out.push(CrownCopy { t, a, b, c: cc });
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Maximum clique of an undirected graph given by adjacency bitsets.
///
/// Branch and bound in the style of Tomita: candidates are greedily
/// coloured and a branch is cut when its colour count cannot beat the best.
pub fn max_clique(adj: &[Vec<u64>]) -> Vec<usize> {
    let n = adj.len();
    let words = n.div_ceil(64);
    let mut all = vec![0u64; words];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(adj, &mut current, all, &mut best);
    best.sort_unstable();
    best
}

fn members(set: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in set.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            out.push(w * 64 + bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
    }
    out
}

/// Greedy colouring of `cand`: vertices in colour order with their colour number.
fn colour_order(adj: &[Vec<u64>], cand: &[u64]) -> Vec<(usize, usize)> {
    let mut uncoloured = cand.to_vec();
    let mut order = Vec::new();
    let mut colour = 0;
    while uncoloured.iter().any(|&w| w != 0) {
        colour += 1;
        let mut avail = uncoloured.clone();
        while let Some(v) = members(&avail).first().copied() {
            order.push((v, colour));
            uncoloured[v / 64] &= !(1 << (v % 64));
            avail[v / 64] &= !(1 << (v % 64));
            for (a, n) in avail.iter_mut().zip(&adj[v]) {
                *a &= !n;
            }
        }
    }
    order
}

fn expand(adj: &[Vec<u64>], current: &mut Vec<usize>, mut cand: Vec<u64>, best: &mut Vec<usize>) {
    let order = colour_order(adj, &cand);
    for &(v, colour) in order.iter().rev() {
        if current.len() + colour <= best.len() {
            return;
        }
        current.push(v);
        let next: Vec<u64> = cand.iter().zip(&adj[v]).map(|(c, a)| c & a).collect();
        if next.iter().all(|&w| w == 0) {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(adj, current, next, best);
        }
        current.pop();
        cand[v / 64] &= !(1 << (v % 64));
    }
}

/// Adjacency bitsets of the unrelatedness graph on `copies`.
fn unrelatedness_graph(copies: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let words = copies.len().div_ceil(64);
    (0..copies.len())
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u64; words];
            for (j, other) in copies.iter().enumerate() {
                if i != j && unrelated(&copies[i], other) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpResult {
    pub value: u64,
    pub copies: usize,
    /// A largest unrelated family, as member masks.
    pub family: Vec<Vec<u64>>,
}

fn clique_result(copies: Vec<Vec<u64>>) -> SpResult {
    let adj = unrelatedness_graph(&copies);
    let clique = max_clique(&adj);
    SpResult {
        value: clique.len() as u64,
        copies: copies.len(),
        family: clique.iter().map(|&i| copies[i].clone()).collect(),
    }
}

/// `Sp(crown, n)` over normal-form copies.
pub fn sp_exact_crown(n: u64) -> Result<SpResult> {
    if n > SP_N_MAX {
        return Err(Error::TooLarge(format!("Sp(crown, {n}) (limit n <= {SP_N_MAX})")));
    }
    let copies = crown_copies(n)?.iter().map(|c| c.members().to_vec()).collect();
    Ok(clique_result(copies))
}

/// Every subset of the powerset of `[n]` that induces a copy of `u`, as a
/// sorted list of masks.
pub fn poset_copies(u: &FinitePoset, n: u64) -> Result<Vec<Vec<u64>>> {
    let k = u.size();
    let universe: Vec<u64> = (0..1u64 << n).collect();
    let mut found = std::collections::BTreeSet::new();
    let mut image = vec![0u64; k];
    fn place(
        u: &FinitePoset,
        universe: &[u64],
        depth: usize,
        image: &mut Vec<u64>,
        found: &mut std::collections::BTreeSet<Vec<u64>>,
    ) -> Result<()> {
        if depth == u.size() {
            let mut set = image.clone();
            set.sort_unstable();
            found.insert(set);
            if found.len() > COPY_LIMIT {
                return Err(Error::TooLarge(format!("more than {COPY_LIMIT} copies")));
            }
            return Ok(());
        }
        for &x in universe {
            let ok = (0..depth).all(|j| {
                let y = image[j];
                x != y && (x & !y == 0) == u.leq(depth, j) && (y & !x == 0) == u.leq(j, depth)
            });
            if ok {
                image[depth] = x;
                place(u, universe, depth + 1, image, found)?;
            }
        }
        Ok(())
    }
    place(u, &universe, 0, &mut image, &mut found)?;
    Ok(found.into_iter().collect())
}

/// `Sp(u, n)`: the largest number of pairwise unrelated copies of `u` in the
/// powerset of `[n]`. Crowns go through the normal-form enumeration.
pub fn sp_exact(u: &FinitePoset, n: u64) -> Result<SpResult> {
    if n > SP_N_MAX {
        return Err(Error::TooLarge(format!("Sp over n = {n} (limit {SP_N_MAX})")));
    }
    if u.size() > SP_POSET_MAX {
        return Err(Error::TooLarge(format!("posets of size {} (limit {SP_POSET_MAX})", u.size())));
    }
    if u.is_isomorphic(&crown()) {
        return sp_exact_crown(n);
    }
    Ok(clique_result(poset_copies(u, n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigcomb::fsp;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u64>> {
        let words = n.div_ceil(64);
        let mut adj = vec![vec![0u64; words]; n];
        for &(a, b) in edges {
            adj[a][b / 64] |= 1 << (b % 64);
            adj[b][a / 64] |= 1 << (a % 64);
        }
        adj
    }

    #[test]
    fn clique_small_graphs() {
        assert_eq!(max_clique(&graph(4, &[])).len(), 1);
        let k4 = graph(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]);
        assert_eq!(max_clique(&k4), vec![0, 1, 2, 3]);
        // 5-cycle has clique number 2
        assert_eq!(max_clique(&graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])).len(), 2);
    }

    #[test]
    fn clique_matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(1..=14);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((a, b));
                    }
                }
            }
            let adj = graph(n, &edges);
            let brute = (0u32..1 << n)
                .filter(|s| {
                    (0..n).all(|a| (a + 1..n).all(|b| s >> a & 1 == 0 || s >> b & 1 == 0 || edges.contains(&(a, b))))
                })
                .map(|s| s.count_ones() as usize)
                .max()
                .unwrap();
            let clique = max_clique(&adj);
            assert_eq!(clique.len(), brute);
            for (i, &a) in clique.iter().enumerate() {
                for &b in &clique[i + 1..] {
                    assert!(edges.contains(&(a.min(b), a.max(b))));
                }
            }
        }
    }

    #[test]
    fn crown_copy_counts() {
        assert_eq!(crown_copies(3).unwrap().len(), 1);
        assert_eq!(crown_copies(5).unwrap().len(), 125);
        assert_eq!(crown_copies(6).unwrap().len(), 910);
        for c in crown_copies(5).unwrap() {
            let poset = FinitePoset::from_masks(&c.members());
            assert!(poset.is_isomorphic(&crown()));
        }
        assert!(CrownCopy::new(1, 1, 2, 4).is_err());
        assert!(CrownCopy::new(0, 1, 0, 4).is_err());
    }

    #[test]
    fn singleton_sperner_numbers() {
        for n in 0..=5 {
            let sp = sp_exact(&FinitePoset::singleton(), n).unwrap().value;
            assert_eq!(crate::bigcomb::Natural::from(sp), fsp(n));
        }
    }

    #[test]
    fn crown_sperner_small() {
        assert_eq!(sp_exact_crown(3).unwrap().value, 1);
        assert_eq!(sp_exact_crown(4).unwrap().value, 1);
        let s5 = sp_exact_crown(5).unwrap();
        assert_eq!(s5.value, 2);
        assert!(unrelated(&s5.family[0], &s5.family[1]));
        assert!(sp_exact_crown(7).is_err());
    }

    #[test]
    fn general_path_agrees_with_normal_form_on_small_n() {
        // general copies include non-normal ones, but the maximum is the same
        for n in 3..=4 {
            let general = poset_copies(&crown(), n).unwrap();
            assert!(general.len() >= crown_copies(n).unwrap().len());
            assert_eq!(clique_result(general).value, sp_exact_crown(n).unwrap().value);
        }
        let anti2 = FinitePoset::antichain(2);
        // two unrelated 2-antichains need four pairwise incomparable sets
        assert_eq!(sp_exact(&anti2, 4).unwrap().value, 3);
    }
}
