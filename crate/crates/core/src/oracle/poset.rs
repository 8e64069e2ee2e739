//! Explicit finite posets, full segment posets and order isomorphism.

use crate::error::{Error, Result};

/// A finite partial order on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    size: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds the order from a relation, checking that it is a partial order.
    pub fn from_relation(size: usize, rel: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            for j in 0..size {
                leq[i * size + j] = rel(i, j);
            }
        }
        let poset = FinitePoset { size, leq };
        poset.check_axioms()?;
        Ok(poset)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size;
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::Constraint(format!("relation is not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::Constraint(format!("relation is not antisymmetric at ({i}, {j})")));
                }
                if !self.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.leq(j, k) && !self.leq(i, k) {
                        return Err(Error::Constraint(format!("relation is not transitive at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Subsets of a ground set, given as bitmasks, ordered by inclusion.
    pub fn from_masks(masks: &[u64]) -> Self {
        let size = masks.len();
        let mut leq = vec![false; size * size];
        for (i, &x) in masks.iter().enumerate() {
            for (j, &y) in masks.iter().enumerate() {
                leq[i * size + j] = x & !y == 0;
            }
        }
        FinitePoset { size, leq }
    }

    pub fn antichain(size: usize) -> Self {
        FinitePoset::from_relation(size, |i, j| i == j).expect("equality is a partial order")
    }

    pub fn singleton() -> Self {
        FinitePoset::antichain(1)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    /// `i` and `j` are incomparable.
    pub fn parallel(&self, i: usize, j: usize) -> bool {
        !self.leq(i, j) && !self.leq(j, i)
    }

    /// The subposet induced on `elems`, indexed in the given order.
    pub fn induced(&self, elems: &[usize]) -> Self {
        let size = elems.len();
        let mut leq = vec![false; size * size];
        for (a, &i) in elems.iter().enumerate() {
            for (b, &j) in elems.iter().enumerate() {
                leq[a * size + b] = self.leq(i, j);
            }
        }
        FinitePoset { size, leq }
    }

    pub fn dual(&self) -> Self {
        let n = self.size;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(j, i);
            }
        }
        FinitePoset { size: n, leq }
    }

    fn profile(&self, i: usize) -> (usize, usize) {
        let down = (0..self.size).filter(|&j| self.leq(j, i)).count();
        let up = (0..self.size).filter(|&j| self.leq(i, j)).count();
        (down, up)
    }

    /// An order isomorphism onto `other`, if one exists.
    pub fn isomorphism(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        if self.size != other.size {
            return None;
        }
        let p1: Vec<_> = (0..self.size).map(|i| self.profile(i)).collect();
        let p2: Vec<_> = (0..other.size).map(|i| other.profile(i)).collect();
        let mut s1 = p1.clone();
        let mut s2 = p2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return None;
        }
        // map elements with rarer profiles first
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| (p1.iter().filter(|p| **p == p1[i]).count(), i));
        let mut image = vec![usize::MAX; self.size];
        let mut used = vec![false; self.size];
        if self.extend(other, &order, 0, &p1, &p2, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        other: &FinitePoset,
        order: &[usize],
        depth: usize,
        p1: &[(usize, usize)],
        p2: &[(usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&i) = order.get(depth) else {
            return true;
        };
        for cand in 0..other.size {
            if used[cand] || p2[cand] != p1[i] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&j| self.leq(i, j) == other.leq(cand, image[j]) && self.leq(j, i) == other.leq(image[j], cand));
            if !consistent {
                continue;
            }
            image[i] = cand;
            used[cand] = true;
            if self.extend(other, order, depth + 1, p1, p2, image, used) {
                return true;
            }
            used[cand] = false;
        }
        image[i] = usize::MAX;
        false
    }

    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        self.isomorphism(other).is_some()
    }
}

/// Subsets `X` of `{0, .., r-1}` with `a < |X| < b`, as bitmasks in
/// increasing size and then increasing mask order.
pub fn fsp_masks(r: u64, a: u64, b: u64) -> Result<Vec<u64>> {
    if !(a + 2 <= b && b <= r) || r > 20 {
        return Err(Error::Constraint(format!("need a + 2 <= b <= r <= 20, got r={r} a={a} b={b}")));
    }
    let mut masks: Vec<u64> = (0u64..1 << r)
        .filter(|m| {
            let c = u64::from(m.count_ones());
            a < c && c < b
        })
        .collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    Ok(masks)
}

/// The full segment poset `{X subset of [r] : a < |X| < b}` under inclusion.
pub fn build_fsp(r: u64, a: u64, b: u64) -> Result<FinitePoset> {
    Ok(FinitePoset::from_masks(&fsp_masks(r, a, b)?))
}

/// The 3-crown, `FSP(3, 0, 3)`.
pub fn crown() -> FinitePoset {
    build_fsp(3, 0, 3).expect("valid parameters")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fsp_examples() {
        let c = crown();
        assert_eq!(c.size(), 6);
        // each bottom element is below exactly two tops
        for i in 0..3 {
            assert_eq!((3..6).filter(|&j| c.leq(i, j)).count(), 2);
        }
        assert_eq!(build_fsp(8, 3, 6).unwrap().size(), 126);
        let anti = build_fsp(2, 0, 2).unwrap();
        assert!(anti.is_isomorphic(&FinitePoset::antichain(2)));
        assert!(build_fsp(3, 1, 2).is_err());
        assert!(build_fsp(3, 0, 4).is_err());
    }

    #[test]
    fn axioms_are_checked() {
        assert!(FinitePoset::from_relation(2, |_, _| true).is_err());
        assert!(FinitePoset::from_relation(2, |i, j| i != j).is_err());
        assert!(FinitePoset::from_relation(3, |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2)).is_err());
        assert!(FinitePoset::from_relation(3, |i, j| i <= j).is_ok());
    }

    #[test]
    fn isomorphism_search() {
        let c = crown();
        assert!(c.is_isomorphic(&c.dual()));
        let chain3 = FinitePoset::from_relation(3, |i, j| i <= j).unwrap();
        assert!(!chain3.is_isomorphic(&FinitePoset::antichain(3)));
        // FSP(4,0,4) is self-dual under complementation but not a product of chains
        let f4 = build_fsp(4, 0, 4).unwrap();
        let iso = f4.isomorphism(&f4.dual()).unwrap();
        for i in 0..f4.size() {
            for j in 0..f4.size() {
                assert_eq!(f4.leq(i, j), f4.leq(iso[j], iso[i]));
            }
        }
        assert!(!f4.is_isomorphic(&build_fsp(4, 0, 3).unwrap()));
    }
}
