//! Exhaustive minimisation of the permutation-count expressions `fha` over
//! `H4(n)` and `fhb` over `H3(n)`, and the resulting `M_n`.
//!
//! `fha(t, x1, x2, x3)` is the size of the union of the six permutation sets
//! of a normalised crown copy with `|T| = t` and dotted parts of sizes
//! `x1, x2, x3`; `M_n` is its minimum. `fhb` is the two-part auxiliary
//! function with `2 fha = fhb(t,x1,x2) + fhb(t,x2,x3) + fhb(t,x1,x3)`.

use std::fmt;
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::bigcomb::{FactorialTable, Natural};
use crate::error::{out_of_range, Error, Result};
use crate::estimates::CERTIFIED_N_MAX;

/// Largest `n` accepted by the exhaustive `H4(n)` search.
pub const H4_SEARCH_MAX: u64 = 60;

/// Above this the floating-point prefilter would underflow; search is exact only.
const FILTER_N_MAX: u64 = 1000;

/// Relative slack of the prefilter. Approximations carry a relative error
/// below 1e-14, so a point whose approximation exceeds the best approximation
/// by this factor is strictly worse than the best exact value.
const FILTER_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SimplexPoint4 {
    pub t: u64,
    pub x1: u64,
    pub x2: u64,
    pub x3: u64,
}

impl SimplexPoint4 {
    pub fn new(t: u64, x1: u64, x2: u64, x3: u64) -> Self {
        SimplexPoint4 { t, x1, x2, x3 }
    }

    pub fn in_h4(&self, n: u64) -> bool {
        self.x1 > 0 && self.x2 > 0 && self.x3 > 0 && self.t + self.x1 + self.x2 + self.x3 <= n
    }

    fn xs(&self) -> [u64; 3] {
        [self.x1, self.x2, self.x3]
    }
}

impl fmt::Display for SimplexPoint4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.t, self.x1, self.x2, self.x3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SimplexPoint3 {
    pub t: u64,
    pub x: u64,
    pub y: u64,
}

impl SimplexPoint3 {
    pub fn new(t: u64, x: u64, y: u64) -> Self {
        SimplexPoint3 { t, x, y }
    }

    /// Membership in `H3(n)`: `x, y >= 1` and `t + x + y <= n - 1`.
    pub fn in_h3(&self, n: u64) -> bool {
        self.x > 0 && self.y > 0 && self.t + self.x + self.y < n
    }

    /// Membership in the half domain `H3'(n)` (additionally `x <= y`).
    pub fn in_h3_half(&self, n: u64) -> bool {
        self.in_h3(n) && self.x <= self.y
    }

    pub fn reflected(&self) -> Self {
        SimplexPoint3::new(self.t, self.y, self.x)
    }
}

impl fmt::Display for SimplexPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.t, self.x, self.y)
    }
}

/// Minimum value together with every point attaining it, in `(t, x, y)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinResult<P> {
    pub n: u64,
    pub value: Natural,
    pub argmin: Vec<P>,
}

impl<P: fmt::Display> MinResult<P> {
    /// `n=<n> min=<value> argmin=[(t,x,y),...] elapsed_ms=<int>`
    pub fn telemetry_line(&self, elapsed_ms: u128) -> String {
        let points: Vec<String> = self.argmin.iter().map(|p| p.to_string()).collect();
        format!("n={} min={} argmin=[{}] elapsed_ms={}", self.n, self.value, points.join(","), elapsed_ms)
    }
}

/// How `M_n` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MnMode {
    /// Closed form at `(floor((n-2)/2), 1, 1, 1)`; only for `3 <= n <= 300`.
    CertifiedClosedForm,
    /// Exhaustive minimisation of `fha` over `H4(n)`; small `n` only.
    FullH4Search,
    /// Exhaustive minimisation of `fhb` over `H3'(n)` plus the decomposition identity.
    ViaH3,
}

fn factorials_for(n: u64) -> std::borrow::Cow<'static, [Natural]> {
    let shared = FactorialTable::shared();
    if n <= shared.n_max() {
        std::borrow::Cow::Borrowed(shared.as_slice())
    } else {
        std::borrow::Cow::Owned(FactorialTable::new(n).as_slice().to_vec())
    }
}

fn fha_with(f: &[Natural], n: u64, t: u64, xs: [u64; 3]) -> Natural {
    let fi = |k: u64| &f[k as usize];
    let mut pos = Natural::default();
    let mut neg = Natural::default();
    for &x in &xs {
        pos += fi(t + x) * fi(n - t - x);
    }
    for (j, u) in [(0, 1), (0, 2), (1, 2)] {
        let s = t + xs[j] + xs[u];
        pos += fi(s) * fi(n - s);
    }
    for j in 0..3 {
        for u in 0..3 {
            if j != u {
                let s = t + xs[j] + xs[u];
                neg += fi(t + xs[j]) * fi(xs[u]) * fi(n - s);
            }
        }
    }
    pos - neg
}

fn fhb_with(f: &[Natural], n: u64, t: u64, x: u64, y: u64) -> Natural {
    let fi = |k: u64| &f[k as usize];
    let s = t + x + y;
    let pos = fi(t + x) * fi(n - t - x) + fi(t + y) * fi(n - t - y) + ((fi(s) * fi(n - s)) << 1);
    let rest = fi(n - s);
    let neg = ((fi(t + x) * fi(y) * rest) << 1) + ((fi(t + y) * fi(x) * rest) << 1);
    pos - neg
}

pub fn fha_eval(n: u64, pt: SimplexPoint4) -> Result<Natural> {
    if !pt.in_h4(n) {
        return Err(Error::Constraint(format!("{pt} is not in H4({n})")));
    }
    Ok(fha_with(&factorials_for(n), n, pt.t, pt.xs()))
}

pub fn fhb_eval(n: u64, pt: SimplexPoint3) -> Result<Natural> {
    if !pt.in_h3(n) {
        return Err(Error::Constraint(format!("{pt} is not in H3({n})")));
    }
    Ok(fhb_with(&factorials_for(n), n, pt.t, pt.x, pt.y))
}

/// `3 floor(n/2)! ceil(n/2)! + 3 floor((n+2)/2)! ceil((n-2)/2)! - 6 floor(n/2)! ceil((n-2)/2)!`,
/// the value of `fha` at `(floor((n-2)/2), 1, 1, 1)`.
pub fn mn_closed_form(n: u64) -> Natural {
    assert!(n >= 3, "closed form needs n >= 3");
    let f = factorials_for(n);
    let fl = |k: u64| &f[k as usize];
    let half_lo = n / 2;
    let half_hi = n.div_ceil(2);
    let shifted_hi = (n - 2).div_ceil(2);
    let pos = (fl(half_lo) * fl(half_hi)) * 3u32 + (fl((n + 2) / 2) * fl(shifted_hi)) * 3u32;
    pos - (fl(half_lo) * fl(shifted_hi)) * 6u32
}

struct SliceMin {
    value: Natural,
    argmin: Vec<SimplexPoint3>,
}

/// Approximates `fhb / n!` with every term positive:
/// `1/C(n,t+x) + 1/C(n,t+y) + 2 (1 - 1/C(s,y) - 1/C(s,x)) / C(n,s)`.
/// The bracket is either exactly zero (`s = 2`) or at least 1/3, so no
/// cancellation amplifies rounding error.
struct Prefilter {
    inv_row: Vec<f64>,
    inv_tri: Vec<Vec<f64>>,
}

impl Prefilter {
    fn new(n: u64) -> Option<Self> {
        if n > FILTER_N_MAX {
            return None;
        }
        let mut tri: Vec<Vec<f64>> = Vec::with_capacity(n as usize + 1);
        let mut row = vec![Natural::from(1u32)];
        for s in 0..=n {
            if s > 0 {
                let mut next = Vec::with_capacity(row.len() + 1);
                next.push(Natural::from(1u32));
                for w in row.windows(2) {
                    next.push(&w[0] + &w[1]);
                }
                next.push(Natural::from(1u32));
                row = next;
            }
            let inv: Option<Vec<f64>> =
                row.iter().map(|c| c.to_f64().filter(|v| v.is_finite()).map(|v| 1.0 / v)).collect();
            tri.push(inv?);
        }
        let inv_row = tri[n as usize].clone();
        if inv_row.iter().any(|v| !v.is_normal()) {
            return None;
        }
        Some(Prefilter { inv_row, inv_tri: tri })
    }

    #[inline]
    fn approx(&self, t: u64, x: u64, y: u64) -> f64 {
        let s = (t + x + y) as usize;
        let bracket = 1.0 - self.inv_tri[s][y as usize] - self.inv_tri[s][x as usize];
        self.inv_row[(t + x) as usize] + self.inv_row[(t + y) as usize] + 2.0 * bracket * self.inv_row[s]
    }
}

fn slice_min(f: &[Natural], n: u64, t: u64, filter: Option<&Prefilter>) -> Option<SliceMin> {
    let mut best: Option<SliceMin> = None;
    let mut best_approx = f64::INFINITY;
    for x in 1..=n.saturating_sub(t + 2) {
        for y in x..=n - t - x - 1 {
            let approx = filter.map(|fl| fl.approx(t, x, y));
            if let Some(a) = approx {
                if a > best_approx * (1.0 + FILTER_SLACK) {
                    continue;
                }
            }
            let value = fhb_with(f, n, t, x, y);
            let pt = SimplexPoint3::new(t, x, y);
            match &mut best {
                Some(b) if value > b.value => {}
                Some(b) if value == b.value => b.argmin.push(pt),
                _ => {
                    best = Some(SliceMin { value, argmin: vec![pt] });
                    if let Some(a) = approx {
                        best_approx = a;
                    }
                }
            }
        }
    }
    best
}

fn search_h3(n: u64, use_filter: bool) -> Result<MinResult<SimplexPoint3>> {
    if n < 3 {
        return Err(out_of_range("n", n, ">= 3"));
    }
    let f = factorials_for(n);
    let filter = if use_filter { Prefilter::new(n) } else { None };
    let slices: Vec<Option<SliceMin>> =
        (0..=n - 3).into_par_iter().map(|t| slice_min(&f, n, t, filter.as_ref())).collect();
    let mut value: Option<Natural> = None;
    let mut half = Vec::new();
    for s in slices.into_iter().flatten() {
        match &value {
            Some(v) if s.value > *v => {}
            Some(v) if s.value == *v => half.extend(s.argmin),
            _ => {
                value = Some(s.value);
                half = s.argmin;
            }
        }
    }
    let value = value.expect("H3'(n) is nonempty for n >= 3");
    let mut argmin: Vec<SimplexPoint3> = half.iter().flat_map(|p| [*p, p.reflected()]).collect();
    argmin.sort();
    argmin.dedup();
    Ok(MinResult { n, value, argmin })
}

/// Minimum of `fhb` over `H3(n)` with all attaining points.
///
/// Searches the half domain `H3'(n)` in `(t, x, y)` order, one worker per
/// `t`-slice, and reflects. For `n <= 1000` every point is first screened by
/// a floating-point approximation; only points that could tie or beat the
/// current best are evaluated exactly.
pub fn min_fhb(n: u64) -> Result<MinResult<SimplexPoint3>> {
    search_h3(n, true)
}

/// As [`min_fhb`], but every point is evaluated in exact arithmetic.
pub fn min_fhb_exact(n: u64) -> Result<MinResult<SimplexPoint3>> {
    search_h3(n, false)
}

/// Whether `(floor((n-2)/2), 1, 1)` minimises `fhb` on `H3(n)`.
pub fn verify_min_location(n: u64) -> Result<(bool, MinResult<SimplexPoint3>)> {
    let result = min_fhb(n)?;
    let expected = SimplexPoint3::new((n - 2) / 2, 1, 1);
    Ok((result.argmin.contains(&expected), result))
}

/// Exhaustive minimum of `fha` over `H4(n)`, for `n <= H4_SEARCH_MAX`.
pub fn min_fha_exhaustive(n: u64) -> Result<MinResult<SimplexPoint4>> {
    if !(3..=H4_SEARCH_MAX).contains(&n) {
        return Err(out_of_range("n", n, &format!("3..={H4_SEARCH_MAX}")));
    }
    let f = factorials_for(n);
    let mut best: Option<MinResult<SimplexPoint4>> = None;
    for t in 0..=n - 3 {
        for x1 in 1..=n - t - 2 {
            for x2 in 1..=n - t - x1 - 1 {
                for x3 in 1..=n - t - x1 - x2 {
                    let value = fha_with(&f, n, t, [x1, x2, x3]);
                    let pt = SimplexPoint4::new(t, x1, x2, x3);
                    match &mut best {
                        Some(b) if value > b.value => {}
                        Some(b) if value == b.value => b.argmin.push(pt),
                        _ => best = Some(MinResult { n, value, argmin: vec![pt] }),
                    }
                }
            }
        }
    }
    Ok(best.expect("H4(n) is nonempty for n >= 3"))
}

/// `M_n`, the minimum of `fha` over `H4(n)`.
pub fn compute_mn(n: u64, mode: MnMode) -> Result<Natural> {
    if n < 3 {
        return Err(out_of_range("n", n, ">= 3"));
    }
    match mode {
        MnMode::CertifiedClosedForm => {
            if n > CERTIFIED_N_MAX {
                return Err(out_of_range("n", n, &format!("3..={CERTIFIED_N_MAX} for the closed form")));
            }
            Ok(mn_closed_form(n))
        }
        MnMode::FullH4Search => Ok(min_fha_exhaustive(n)?.value),
        MnMode::ViaH3 => {
            // 2 fha >= 3 min fhb everywhere, with equality at (t, x, x, x)
            // whenever fhb(t, x, x) is minimal and the point fits in H4(n)
            let m = min_fhb(n)?;
            let witness =
                m.argmin.iter().find(|p| p.x == p.y && p.t + 3 * p.x <= n).ok_or(Error::Inconclusive { n })?;
            let pt = SimplexPoint4::new(witness.t, witness.x, witness.x, witness.x);
            let value = fha_eval(n, pt)?;
            debug_assert_eq!(&value << 1, &m.value * 3u32);
            Ok(value)
        }
    }
}

/// Checks `2 fha(t,x1,x2,x3) = fhb(t,x1,x2) + fhb(t,x2,x3) + fhb(t,x1,x3)` at `pt`.
pub fn decomposition_check(n: u64, pt: SimplexPoint4) -> Result<bool> {
    if !pt.in_h4(n) {
        return Err(Error::Constraint(format!("{pt} is not in H4({n})")));
    }
    let f = factorials_for(n);
    let SimplexPoint4 { t, x1, x2, x3 } = pt;
    let lhs = fha_with(&f, n, t, [x1, x2, x3]) << 1;
    let rhs = fhb_with(&f, n, t, x1, x2) + fhb_with(&f, n, t, x2, x3) + fhb_with(&f, n, t, x1, x3);
    Ok(lhs == rhs)
}

/// Runs [`verify_min_location`] and renders its telemetry line.
pub fn verify_with_telemetry(n: u64) -> Result<(bool, MinResult<SimplexPoint3>, String)> {
    let start = Instant::now();
    let (ok, result) = verify_min_location(n)?;
    let line = result.telemetry_line(start.elapsed().as_millis());
    Ok((ok, result, line))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn p3(t: u64, x: u64, y: u64) -> SimplexPoint3 {
        SimplexPoint3::new(t, x, y)
    }

    fn p4(t: u64, x1: u64, x2: u64, x3: u64) -> SimplexPoint4 {
        SimplexPoint4::new(t, x1, x2, x3)
    }

    #[test]
    fn fha_examples() {
        assert_eq!(fha_eval(8, p4(3, 1, 1, 1)).unwrap(), nat(3024));
        assert_eq!(fha_eval(8, p4(2, 1, 1, 1)).unwrap(), nat(3024));
        assert_eq!(fha_eval(6, p4(2, 1, 1, 1)).unwrap(), nat(180));
        assert!(fha_eval(5, p4(3, 1, 1, 1)).is_err());
        assert!(fha_eval(8, p4(0, 0, 1, 1)).is_err());
    }

    #[test]
    fn fhb_examples() {
        assert_eq!(fhb_eval(8, p3(3, 1, 1)).unwrap(), nat(2016));
        assert_eq!(fhb_eval(8, p3(2, 1, 1)).unwrap(), nat(2016));
        assert_eq!(fhb_eval(8, p3(4, 1, 1)).unwrap(), nat(3360));
        assert!(fhb_eval(8, p3(6, 1, 1)).is_err());
    }

    #[test]
    fn closed_form_small_values() {
        assert_eq!(mn_closed_form(3), nat(6));
        assert_eq!(mn_closed_form(6), nat(180));
        assert_eq!(mn_closed_form(8), nat(3024));
    }

    #[test]
    fn min_fhb_examples() {
        let m8 = min_fhb(8).unwrap();
        assert_eq!(m8.value, nat(2016));
        assert_eq!(m8.argmin, vec![p3(2, 1, 1), p3(3, 1, 1)]);
        let m7 = min_fhb(7).unwrap();
        assert_eq!(m7.argmin, vec![p3(2, 1, 1)]);
        let m6 = min_fhb(6).unwrap();
        assert_eq!(m6.argmin, vec![p3(1, 1, 1), p3(2, 1, 1)]);
        assert!(min_fhb(2).is_err());
    }

    #[test]
    fn filtered_search_matches_exact_search() {
        for n in 3..=60 {
            assert_eq!(min_fhb(n).unwrap(), min_fhb_exact(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn argmin_reported_over_full_h3() {
        // brute force over all of H3(n), no symmetry reduction
        for n in 3..=16u64 {
            let f = FactorialTable::new(n);
            let mut best: Option<(Natural, Vec<SimplexPoint3>)> = None;
            for t in 0..n {
                for x in 1..n {
                    for y in 1..n {
                        let pt = p3(t, x, y);
                        if !pt.in_h3(n) {
                            continue;
                        }
                        let v = fhb_with(f.as_slice(), n, t, x, y);
                        match &mut best {
                            Some((bv, _)) if v > *bv => {}
                            Some((bv, pts)) if v == *bv => pts.push(pt),
                            _ => best = Some((v, vec![pt])),
                        }
                    }
                }
            }
            let (value, argmin) = best.unwrap();
            let got = min_fhb(n).unwrap();
            assert_eq!(got.value, value);
            assert_eq!(got.argmin, argmin, "n={n}");
        }
    }

    #[test]
    fn min_location_small_range() {
        for n in 3..=80 {
            let (ok, _) = verify_min_location(n).unwrap();
            assert!(ok, "n={n}");
        }
    }

    #[test]
    fn even_odd_argmin_structure() {
        for n in (4..=40).step_by(2) {
            assert!(min_fhb(n).unwrap().argmin.len() >= 2, "n={n}");
        }
        for n in (3..=39).step_by(2) {
            let m = min_fhb(n).unwrap();
            assert_eq!(m.argmin, vec![p3((n - 2) / 2, 1, 1)], "n={n}");
        }
    }

    #[test]
    fn mn_modes_agree() {
        for n in 3..=20 {
            let closed = compute_mn(n, MnMode::CertifiedClosedForm).unwrap();
            assert_eq!(compute_mn(n, MnMode::FullH4Search).unwrap(), closed, "n={n}");
            assert_eq!(compute_mn(n, MnMode::ViaH3).unwrap(), closed, "n={n}");
        }
        assert_eq!(compute_mn(8, MnMode::FullH4Search).unwrap(), nat(3024));
        assert_eq!(compute_mn(6, MnMode::FullH4Search).unwrap(), nat(180));
        assert!(compute_mn(301, MnMode::CertifiedClosedForm).is_err());
        assert!(compute_mn(H4_SEARCH_MAX + 1, MnMode::FullH4Search).is_err());
    }

    #[test]
    fn decomposition_examples() {
        assert!(decomposition_check(8, p4(3, 1, 1, 1)).unwrap());
        assert!(decomposition_check(8, p4(1, 1, 2, 3)).unwrap());
        assert!(decomposition_check(10, p4(0, 1, 1, 1)).unwrap());
        assert_eq!(fha_eval(8, p4(3, 1, 1, 1)).unwrap() * 2u32, fhb_eval(8, p3(3, 1, 1)).unwrap() * 3u32);
    }

    #[test]
    fn decomposition_exhaustive_small_n() {
        for n in 3..=12u64 {
            for t in 0..=n - 3 {
                for x1 in 1..=n - t - 2 {
                    for x2 in 1..=n - t - x1 - 1 {
                        for x3 in 1..=n - t - x1 - x2 {
                            assert!(decomposition_check(n, p4(t, x1, x2, x3)).unwrap());
                        }
                    }
                }
            }
        }
    }

    fn random_h4_point(rng: &mut ChaCha8Rng, n: u64) -> SimplexPoint4 {
        loop {
            let t = rng.gen_range(0..=n - 3);
            let x1 = rng.gen_range(1..=n - 2);
            let x2 = rng.gen_range(1..=n - 2);
            let x3 = rng.gen_range(1..=n - 2);
            let pt = p4(t, x1, x2, x3);
            if pt.in_h4(n) {
                return pt;
            }
        }
    }

    #[test]
    fn decomposition_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
        for n in 13..=100u64 {
            for _ in 0..1000 {
                let pt = random_h4_point(&mut rng, n);
                assert!(decomposition_check(n, pt).unwrap(), "n={n} {pt}");
            }
        }
    }

    #[test]
    fn symmetry_of_fha_and_fhb() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..=60u64 {
            for _ in 0..50 {
                let pt = random_h4_point(&mut rng, n);
                let base = fha_eval(n, pt).unwrap();
                let [a, b, c] = pt.xs();
                for [u, v, w] in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                    assert_eq!(fha_eval(n, p4(pt.t, u, v, w)).unwrap(), base);
                }
                let q = p3(pt.t, a, b);
                assert_eq!(fhb_eval(n, q).unwrap(), fhb_eval(n, q.reflected()).unwrap());
            }
        }
    }

    #[test]
    fn telemetry_line_format() {
        let m = min_fhb(8).unwrap();
        assert_eq!(m.telemetry_line(5), "n=8 min=2016 argmin=[(2,1,1),(3,1,1)] elapsed_ms=5");
    }
}
