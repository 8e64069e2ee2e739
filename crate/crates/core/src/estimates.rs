//! Closed-form lower and upper estimates for the Sperner numbers of full
//! segment posets.
//!
//! The lower estimates count the fundamental pairs of the block construction
//! in [`crate::oracle::family`]; the upper estimates come from chains
//! (`g_upper`) and, for the 3-crown, from permutation counting (`g3_star`,
//! `g3_doublestar`).

use num_traits::{One, Zero};

use crate::bigcomb::{binom, factorial, fsp, multinomial, BinomialWindow, Natural};
use crate::error::{Error, Result};
use crate::minsearch::{self, MnMode};

/// Upper end of the range on which the closed form for `M_n` is certified.
pub const CERTIFIED_N_MAX: u64 = 300;

/// Arguments of the general lower estimate `f<p, r, a, b>(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EstimateParams {
    pub r: u64,
    pub a: u64,
    pub b: u64,
    pub p: i64,
    pub n: u64,
}

impl EstimateParams {
    pub fn new(r: u64, a: u64, b: u64, p: i64, n: u64) -> Result<Self> {
        let params = EstimateParams { r, a, b, p, n };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let EstimateParams { r, a, b, p, n } = *self;
        if !(a < b && b <= r && a + 2 <= b) {
            return Err(Error::Constraint(format!("need 0 <= a < b <= r and a + 2 <= b, got r={r} a={a} b={b}")));
        }
        if p.unsigned_abs() > r {
            return Err(Error::Constraint(format!("need -r <= p <= r, got p={p} r={r}")));
        }
        if n < r {
            return Err(Error::Constraint(format!("need n >= r, got n={n} r={r}")));
        }
        Ok(())
    }

    /// Block sizes allowed on earlier blocks: `{0..=a} ∪ {b..=r}`.
    pub fn extremal_sizes(&self) -> Vec<u64> {
        (0..=self.a).chain(self.b..=self.r).collect()
    }

    /// Size `h = p + floor((n - r)/2)` of the set component of a fundamental pair.
    pub fn base_size(&self) -> i64 {
        self.p + ((self.n - self.r) / 2) as i64
    }
}

/// Weak composition of `weight` over a fixed, ordered index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionVector {
    pub weight: u64,
    pub counts: Vec<u64>,
}

impl CompositionVector {
    /// `sum_j index[j] * counts[j]`.
    pub fn weighted_sum(&self, index: &[u64]) -> u64 {
        index.iter().zip(&self.counts).map(|(j, v)| j * v).sum()
    }
}

/// All weak compositions of `weight` into `parts` parts, lexicographically
/// ascending: `(0,..,0,w)` first, `(w,0,..,0)` last.
pub fn compositions(weight: u64, parts: usize) -> Compositions {
    let next = (parts > 0 || weight == 0).then(|| {
        let mut v = vec![0; parts];
        if let Some(last) = v.last_mut() {
            *last = weight;
        }
        v
    });
    Compositions { weight, next }
}

pub struct Compositions {
    weight: u64,
    next: Option<Vec<u64>>,
}

impl Iterator for Compositions {
    type Item = CompositionVector;

    fn next(&mut self) -> Option<CompositionVector> {
        let current = self.next.take()?;
        // advance: bump the entry before the last nonzero, pile the rest at the end
        let last_nonzero = current.iter().rposition(|&v| v != 0);
        if let Some(pos) = last_nonzero.filter(|&p| p > 0) {
            let mut v = current.clone();
            let tail = v[pos];
            v[pos] = 0;
            v[pos - 1] += 1;
            let end = v.len() - 1;
            v[end] = tail - 1;
            self.next = Some(v);
        }
        Some(CompositionVector { weight: self.weight, counts: current })
    }
}

/// The general lower estimate `f<p, r, a, b>(n)`: number of fundamental pairs,
/// enumerated by composition vectors.
pub fn f_lower_general(params: &EstimateParams) -> Result<Natural> {
    params.validate()?;
    let EstimateParams { r, n, .. } = *params;
    let index = params.extremal_sizes();
    let block_choices: Vec<Natural> = index.iter().map(|&j| binom(r as i64, j as i64)).collect();
    let h = params.base_size();
    let mut total = Natural::zero();
    for i in 0..n / r {
        let m = n - (i + 1) * r;
        let window = BinomialWindow::new(m, h - (r * i) as i64, h);
        for v in compositions(i, index.len()) {
            let k = h - v.weighted_sum(&index) as i64;
            let Some(middle) = window.get(k) else {
                continue;
            };
            let mut term = multinomial(i, &v.counts)? * middle;
            for (choice, &count) in block_choices.iter().zip(&v.counts) {
                if count > 0 && !choice.is_one() {
                    term *= num_traits::pow(choice.clone(), count as usize);
                }
            }
            total += term;
        }
    }
    Ok(total)
}

/// `f<r, a, b>(n)`: the best general estimate over `p in -r..=r`.
pub fn f_lower_max(r: u64, a: u64, b: u64, n: u64) -> Result<Natural> {
    let mut best = Natural::zero();
    for p in -(r as i64)..=r as i64 {
        let value = f_lower_general(&EstimateParams::new(r, a, b, p, n)?)?;
        if value > best {
            best = value;
        }
    }
    Ok(best)
}

fn check_full_args(r: u64, n: u64) -> Result<()> {
    if r < 3 || n < r {
        return Err(Error::Constraint(format!("need 3 <= r <= n, got r={r} n={n}")));
    }
    Ok(())
}

/// `f<p, r, 0, r>(n)` in its binomial form.
pub fn f_lower_full(p: i64, r: u64, n: u64) -> Result<Natural> {
    Ok(f_lower_full_range(p, p, r, n)?.pop().unwrap_or_default())
}

/// `f<p, r, 0, r>(n)` for every `p` in `p_lo..=p_hi`, sharing one binomial
/// window per outer index.
pub fn f_lower_full_range(p_lo: i64, p_hi: i64, r: u64, n: u64) -> Result<Vec<Natural>> {
    check_full_args(r, n)?;
    for p in [p_lo, p_hi] {
        if p.unsigned_abs() > r {
            return Err(Error::Constraint(format!("need -r <= p <= r, got p={p} r={r}")));
        }
    }
    if p_lo > p_hi {
        return Ok(Vec::new());
    }
    let base = ((n - r) / 2) as i64;
    let r_signed = r as i64;
    let mut sums = vec![Natural::zero(); (p_hi - p_lo + 1) as usize];
    // row i of Pascal's triangle: C(i, j)
    let mut pascal = vec![Natural::one()];
    for i in 0..n / r {
        let m = n - (i + 1) * r;
        let window = BinomialWindow::new(m, base + p_lo - i as i64 * r_signed, base + p_hi);
        for (sum, p) in sums.iter_mut().zip(p_lo..=p_hi) {
            for (j, weight) in pascal.iter().enumerate() {
                if let Some(c) = window.get(base + p - j as i64 * r_signed) {
                    *sum += weight * c;
                }
            }
        }
        let mut next = Vec::with_capacity(pascal.len() + 1);
        next.push(Natural::one());
        for pair in pascal.windows(2) {
            next.push(&pair[0] + &pair[1]);
        }
        next.push(Natural::one());
        pascal = next;
    }
    Ok(sums)
}

/// `f♭<r, 0, r>(n) = f<0, r, 0, r>(n)`, the lower estimate used throughout.
pub fn flat_lower(r: u64, n: u64) -> Result<Natural> {
    f_lower_full(0, r, n)
}

/// Chain-based upper estimate `g_r(n) = floor(fsp(n + 2 - r) / 2)`.
pub fn g_upper(r: u64, n: u64) -> Result<Natural> {
    if r < 2 || r > n {
        return Err(Error::Constraint(format!("need 2 <= r <= n, got r={r} n={n}")));
    }
    Ok(fsp(n + 2 - r) >> 1)
}

/// `g3*(n) = floor(n! / M_n)`, with `M_n` obtained in the given mode.
///
/// The certified closed form is only accepted for `n <= 300`; beyond that a
/// search mode must be requested explicitly.
pub fn g3_star(n: u64, mode: MnMode) -> Result<Natural> {
    if n < 3 {
        return Err(crate::error::out_of_range("n", n, ">= 3"));
    }
    let mn = minsearch::compute_mn(n, mode)?;
    Ok(factorial(n) / mn)
}

/// `g3**(n)`: `n!` over the closed form of `M_n`, floored.
pub fn g3_doublestar(n: u64) -> Result<Natural> {
    if n < 3 {
        return Err(crate::error::out_of_range("n", n, ">= 3"));
    }
    Ok(factorial(n) / minsearch::mn_closed_form(n))
}

/// `g2(n) = floor(fsp(n) / 2)`, exact for the two-element antichain.
pub fn g2(n: u64) -> Result<Natural> {
    if n < 2 {
        return Err(crate::error::out_of_range("n", n, ">= 2"));
    }
    Ok(fsp(n) >> 1)
}
