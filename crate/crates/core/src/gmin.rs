//! Separated pairs of estimates and the accuracy-1/2 decision of
//! `Gmin(FD(r)^k)`.
//!
//! A pair `(f1, f2)` brackets the Sperner number, `f1(n) <= Sp(n) <= f2(n)`,
//! and is separated when `f2(n) <= f1(n + 1)`. Since `Gmin(L^k)` is the least
//! `n` with `k <= Sp(J(L), n)`, locating `n` with `f1(n) < k <= f1(n + 1)`
//! pins `Gmin` to `n + 1` when `f2(n) < k` and to `{n, n + 1}` otherwise.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bigcomb::Natural;
use crate::error::{out_of_range, Error, Result};
use crate::estimates::{f_lower_full_range, f_lower_max, flat_lower, g3_doublestar, g3_star, g_upper, CERTIFIED_N_MAX};
use crate::minsearch::MnMode;

/// A named integer function of `n`, defined from `domain_start()` on.
pub trait Estimate: Sync {
    fn eval(&self, n: u64) -> Result<Natural>;
    fn name(&self) -> String;
    fn domain_start(&self) -> u64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerEstimate {
    /// `flat_r(n)`.
    Flat { r: u64 },
    /// `f<r, 0, r>(n)`, the general form maximised over `p`.
    FMax { r: u64 },
}

impl LowerEstimate {
    pub fn r(&self) -> u64 {
        match *self {
            LowerEstimate::Flat { r } | LowerEstimate::FMax { r } => r,
        }
    }
}

impl Estimate for LowerEstimate {
    fn eval(&self, n: u64) -> Result<Natural> {
        match *self {
            LowerEstimate::Flat { r } => flat_lower(r, n),
            LowerEstimate::FMax { r } => f_lower_max(r, 0, r, n),
        }
    }

    fn name(&self) -> String {
        match self {
            LowerEstimate::Flat { r } => format!("flat{r}"),
            LowerEstimate::FMax { r } => format!("fmax{r}"),
        }
    }

    fn domain_start(&self) -> u64 {
        self.r()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperEstimate {
    /// `g_r(n) = floor(fsp(n + 2 - r) / 2)`.
    Chain { r: u64 },
    /// `g3*(n)` with `M_n` from the `H3` search.
    CrownStar,
    /// `g3**(n)` from the closed form of `M_n`.
    CrownDoubleStar,
    /// `g3**(n)` where it is certified (`n <= 300`), `g_3(n)` beyond.
    CrownCertified,
}

impl Estimate for UpperEstimate {
    fn eval(&self, n: u64) -> Result<Natural> {
        match *self {
            UpperEstimate::Chain { r } => g_upper(r, n),
            UpperEstimate::CrownStar => g3_star(n, MnMode::ViaH3),
            UpperEstimate::CrownDoubleStar => g3_doublestar(n),
            UpperEstimate::CrownCertified if n <= CERTIFIED_N_MAX => g3_doublestar(n),
            UpperEstimate::CrownCertified => g_upper(3, n),
        }
    }

    fn name(&self) -> String {
        match self {
            UpperEstimate::Chain { r } => format!("g{r}"),
            UpperEstimate::CrownStar => "g3*".into(),
            UpperEstimate::CrownDoubleStar => "g3**".into(),
            UpperEstimate::CrownCertified => "g3**|g3".into(),
        }
    }

    fn domain_start(&self) -> u64 {
        match *self {
            UpperEstimate::Chain { r } => r,
            _ => 3,
        }
    }
}

/// Lower and upper estimate of the same Sperner number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EstimatePair {
    pub lower: LowerEstimate,
    pub upper: UpperEstimate,
    /// First `n` from which the lower estimate increases strictly.
    pub start: u64,
}

impl EstimatePair {
    pub fn new(lower: LowerEstimate, upper: UpperEstimate) -> Result<Self> {
        let r = lower.r();
        if r < 3 {
            return Err(out_of_range("r", r, ">= 3"));
        }
        let crown_upper = !matches!(upper, UpperEstimate::Chain { .. });
        if crown_upper && r != 3 {
            return Err(Error::Constraint(format!("{} bounds the crown, not r = {r}", upper.name())));
        }
        if let UpperEstimate::Chain { r: ru } = upper {
            if ru != r {
                return Err(Error::Constraint(format!("mismatched pair: lower r={r}, upper r={ru}")));
            }
        }
        // every lower estimate is 1 at both n = r and n = r + 1
        Ok(EstimatePair { lower, upper, start: r + 1 })
    }

    /// `(flat3, g3**)` for `r = 3` (switching to `g3` past 300), `(flat_r, g_r)` otherwise.
    pub fn default_for(r: u64) -> Result<Self> {
        let upper = if r == 3 { UpperEstimate::CrownCertified } else { UpperEstimate::Chain { r } };
        EstimatePair::new(LowerEstimate::Flat { r }, upper)
    }

    pub fn r(&self) -> u64 {
        self.lower.r()
    }

    pub fn id(&self) -> String {
        format!("{}/{}", self.lower.name(), self.upper.name())
    }

    fn domain_start(&self) -> u64 {
        self.lower.domain_start().max(self.upper.domain_start())
    }
}

impl fmt::Display for EstimatePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub check: &'static str,
    pub pair: String,
    pub r: u64,
    pub n_lo: u64,
    pub n_hi: u64,
    /// `n` with `upper(n) > lower(n + 1)`.
    pub violations: Vec<u64>,
    /// `n` with `upper(n) = lower(n + 1)`.
    pub equalities: Vec<u64>,
}

impl SeparationReport {
    pub fn is_separated(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `upper(n) <= lower(n + 1)` for every `n` in `n_lo..=n_hi`.
pub fn is_separated(pair: &EstimatePair, n_lo: u64, n_hi: u64) -> Result<SeparationReport> {
    separation_of(&pair.lower, &pair.upper, pair.r(), n_lo, n_hi)
}

/// As [`is_separated`], for any two estimates of the same Sperner number.
pub fn separation_of(
    lower: &dyn Estimate,
    upper: &dyn Estimate,
    r: u64,
    n_lo: u64,
    n_hi: u64,
) -> Result<SeparationReport> {
    let start = lower.domain_start().max(upper.domain_start());
    if n_lo < start {
        return Err(out_of_range("n_lo", n_lo, &format!(">= {start}")));
    }
    let cmp: Vec<(u64, Ordering)> = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| Ok((n, upper.eval(n)?.cmp(&lower.eval(n + 1)?))))
        .collect::<Result<_>>()?;
    let pick = |o: Ordering| cmp.iter().filter(|(_, c)| *c == o).map(|(n, _)| *n).collect();
    Ok(SeparationReport {
        check: "separation",
        pair: format!("{}/{}", lower.name(), upper.name()),
        r,
        n_lo,
        n_hi,
        violations: pick(Ordering::Greater),
        equalities: pick(Ordering::Equal),
    })
}

/// `true` iff `est(n) < est(n + 1)` for every `n` in `n_lo..=n_hi`.
pub fn strict_increase_check(est: &dyn Estimate, n_lo: u64, n_hi: u64) -> Result<bool> {
    if n_lo < est.domain_start() {
        return Err(out_of_range("n_lo", n_lo, &format!(">= {}", est.domain_start())));
    }
    if n_lo > n_hi {
        return Ok(true);
    }
    let values: Vec<Natural> = (n_lo..=n_hi + 1).into_par_iter().map(|n| est.eval(n)).collect::<Result<_>>()?;
    Ok(values.windows(2).all(|w| w[0] < w[1]))
}

/// Memoised evaluations of a nondecreasing estimate.
struct Probe<'a> {
    est: &'a dyn Estimate,
    seen: BTreeMap<u64, Natural>,
}

impl<'a> Probe<'a> {
    fn new(est: &'a dyn Estimate) -> Self {
        Probe { est, seen: BTreeMap::new() }
    }

    fn at(&mut self, n: u64) -> Result<Natural> {
        if let Some(v) = self.seen.get(&n) {
            return Ok(v.clone());
        }
        let v = self.est.eval(n)?;
        self.seen.insert(n, v.clone());
        Ok(v)
    }

    /// Smallest `m >= start` with `est(m) >= k`, by galloping then bisection.
    fn first_reaching(&mut self, k: &Natural, start: u64) -> Result<u64> {
        if self.at(start)? >= *k {
            return Ok(start);
        }
        let (mut below, mut step) = (start, 1u64);
        let mut above = loop {
            let probe = below.checked_add(step).ok_or_else(|| Error::TooLarge("search for n overflowed".into()))?;
            if self.at(probe)? >= *k {
                break probe;
            }
            below = probe;
            step *= 2;
        };
        while above - below > 1 {
            let mid = below + (above - below) / 2;
            if self.at(mid)? >= *k {
                above = mid;
            } else {
                below = mid;
            }
        }
        Ok(above)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GminOutcome {
    Exact(u64),
    Ambiguous(u64, u64),
}

impl GminOutcome {
    pub fn low(&self) -> u64 {
        match *self {
            GminOutcome::Exact(n) | GminOutcome::Ambiguous(n, _) => n,
        }
    }

    pub fn high(&self) -> u64 {
        match *self {
            GminOutcome::Exact(n) | GminOutcome::Ambiguous(_, n) => n,
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        self.low() <= n && n <= self.high()
    }
}

impl fmt::Display for GminOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GminOutcome::Exact(n) => write!(f, "Exact {n}"),
            GminOutcome::Ambiguous(a, b) => write!(f, "Ambiguous {{{a},{b}}}"),
        }
    }
}

/// `(f1(n), f2(n), f1(n + 1))` at the bracketing `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witnesses {
    pub n: u64,
    pub lower_n: Natural,
    pub upper_n: Natural,
    pub lower_next: Natural,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GminResult {
    pub r: u64,
    pub k: Natural,
    pub pair: String,
    pub outcome: GminOutcome,
    pub witnesses: Witnesses,
}

/// Decides `Gmin(FD(r)^k)` up to one of two adjacent values.
///
/// Finds `n >= start` with `f1(n) < k <= f1(n + 1)`; the answer is `n + 1`
/// when `f2(n) < k`, otherwise one of `n, n + 1`. Separation is checked at
/// the consulted points `n - 1` and `n`.
pub fn gmin_power(r: u64, k: &Natural, pair: &EstimatePair) -> Result<GminResult> {
    if pair.r() != r {
        return Err(Error::Constraint(format!("pair {pair} does not belong to r = {r}")));
    }
    let mut lower = Probe::new(&pair.lower);
    let start = pair.start;
    let at_start = lower.at(start)?;
    if *k <= at_start {
        return Err(Error::KTooSmall { k: k.to_string(), lower: at_start.to_string() });
    }
    let n = lower.first_reaching(k, start)? - 1;
    let lower_n = lower.at(n)?;
    let lower_next = lower.at(n + 1)?;
    let upper_n = pair.upper.eval(n)?;
    for m in [n - 1, n] {
        if m >= pair.domain_start() && pair.upper.eval(m)? > lower.at(m + 1)? {
            return Err(Error::NotSeparated { pair: pair.id(), n: m });
        }
    }
    let outcome = if upper_n < *k { GminOutcome::Exact(n + 1) } else { GminOutcome::Ambiguous(n, n + 1) };
    Ok(GminResult {
        r,
        k: k.clone(),
        pair: pair.id(),
        outcome,
        witnesses: Witnesses { n, lower_n, upper_n, lower_next },
    })
}

/// Smallest `n >= r` with `k <= flat_r(n)`: an upper bound on `Gmin(D^k)`
/// for every `r`-generated distributive lattice `D`.
pub fn corollary_upper(r: u64, k: &Natural) -> Result<u64> {
    if r < 3 {
        return Err(out_of_range("r", r, ">= 3"));
    }
    let flat = LowerEstimate::Flat { r };
    let mut probe = Probe::new(&flat);
    // flat_r(r) = 1, so k <= 1 is met at once
    if k.is_zero() || k.is_one() {
        return Ok(r);
    }
    probe.first_reaching(k, r + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestP {
    pub r: u64,
    pub n: u64,
    pub argmax: Vec<i64>,
    #[serde(serialize_with = "crate::report::serialize_natural")]
    pub max: Natural,
}

/// All `p` in `-r..=r` maximising `f<p, r, 0, r>(n)`.
pub fn find_best_p(r: u64, n: u64) -> Result<BestP> {
    let values = f_lower_full_range(-(r as i64), r as i64, r, n)?;
    let max = values.iter().max().cloned().unwrap_or_default();
    let argmax = values.iter().zip(-(r as i64)..).filter(|(v, _)| **v == max).map(|(_, p)| p).collect();
    Ok(BestP { r, n, argmax, max })
}
