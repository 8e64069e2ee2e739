//! Exact combinatorial primitives over arbitrary-precision naturals.
//!
//! Binomial coefficients follow the convention that `C(n, k)` is zero unless
//! `0 <= k <= n`; callers pass signed arguments freely and rely on this.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// Largest factorial kept in the process-wide table.
pub const SHARED_FACTORIAL_MAX: u64 = 6001;

/// Environment variable naming a directory for persisted factorial tables.
pub const FACT_CACHE_ENV: &str = "FDLAT_FACT_CACHE";

const CACHE_MAGIC: &[u8; 8] = b"FDLATFAC";

/// `C(n, k)`, zero outside `0 <= k <= n`.
///
/// Computed as a running product over `min(k, n - k)` factors; every partial
/// result is itself a binomial coefficient, so the divisions are exact.
pub fn binom(n: i64, k: i64) -> Natural {
    if n < 0 || k < 0 || k > n {
        return Natural::zero();
    }
    let n = n as u64;
    let k = (k as u64).min(n - k as u64);
    let mut acc = Natural::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Central binomial coefficient `C(n, floor(n/2))`, the Sperner number of a point.
pub fn fsp(n: u64) -> Natural {
    binom(n as i64, (n / 2) as i64)
}

/// `n!`, served from the shared table when in range.
pub fn factorial(n: u64) -> Natural {
    let table = FactorialTable::shared();
    if n <= table.n_max() {
        return table.get(n).clone();
    }
    let mut acc = table.get(table.n_max()).clone();
    for i in table.n_max() + 1..=n {
        acc *= i;
    }
    acc
}

/// `i! / (parts[0]! * ... * parts[last]!)`; the parts must sum to `i`.
pub fn multinomial(i: u64, parts: &[u64]) -> Result<Natural> {
    let sum: u64 = parts.iter().sum();
    if sum != i {
        return Err(Error::PartsMismatch { expected: i, sum });
    }
    // product of binomials C(remaining, part)
    let mut remaining = i;
    let mut acc = Natural::one();
    for &part in parts {
        if part > 0 && part < remaining {
            acc *= binom(remaining as i64, part as i64);
        }
        remaining -= part;
    }
    Ok(acc)
}

/// Contiguous run of one row of Pascal's triangle: `C(m, k)` for `k` in a window.
///
/// Built from a single direct binomial at the upper end and walked down with
/// `C(m, k-1) = C(m, k) * k / (m - k + 1)`, so a window of width `w` costs one
/// binomial plus `w` small multiply/divide steps.
#[derive(Debug, Clone)]
pub struct BinomialWindow {
    lo: i64,
    values: Vec<Natural>,
}

impl BinomialWindow {
    /// Covers `lo..=hi`; entries outside `0..=m` are implicit zeros.
    pub fn new(m: u64, lo: i64, hi: i64) -> Self {
        let lo = lo.max(0);
        let hi = hi.min(m as i64);
        if lo > hi {
            return BinomialWindow { lo: 0, values: Vec::new() };
        }
        let mut values = Vec::with_capacity((hi - lo + 1) as usize);
        let mut cur = binom(m as i64, hi);
        values.push(cur.clone());
        let m = m as i64;
        for k in (lo + 1..=hi).rev() {
            cur *= k as u64;
            cur /= (m - k + 1) as u64;
            values.push(cur.clone());
        }
        values.reverse();
        BinomialWindow { lo, values }
    }

    /// `C(m, k)` if `k` lies in the window and is nonzero.
    pub fn get(&self, k: i64) -> Option<&Natural> {
        if k < self.lo {
            return None;
        }
        self.values.get((k - self.lo) as usize)
    }
}

/// Precomputed factorials `0!, 1!, ..., n_max!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorialTable {
    table: Vec<Natural>,
}

impl FactorialTable {
    pub fn new(n_max: u64) -> Self {
        let mut table = Vec::with_capacity(n_max as usize + 1);
        let mut acc = Natural::one();
        table.push(acc.clone());
        for i in 1..=n_max {
            acc *= i;
            table.push(acc.clone());
        }
        FactorialTable { table }
    }

    /// Process-wide table up to [`SHARED_FACTORIAL_MAX`], built on first use.
    ///
    /// When `FDLAT_FACT_CACHE` names a directory the table is loaded from (or
    /// written to) `factorials-6001.bin` there; any cache failure falls back
    /// to the in-memory build.
    pub fn shared() -> &'static FactorialTable {
        static SHARED: OnceLock<FactorialTable> = OnceLock::new();
        SHARED.get_or_init(|| match std::env::var_os(FACT_CACHE_ENV) {
            Some(dir) => FactorialTable::load_or_build(Path::new(&dir), SHARED_FACTORIAL_MAX)
                .unwrap_or_else(|_| FactorialTable::new(SHARED_FACTORIAL_MAX)),
            None => FactorialTable::new(SHARED_FACTORIAL_MAX),
        })
    }

    pub fn n_max(&self) -> u64 {
        self.table.len() as u64 - 1
    }

    pub fn get(&self, i: u64) -> &Natural {
        &self.table[i as usize]
    }

    pub fn as_slice(&self) -> &[Natural] {
        &self.table
    }

    /// Checks `table[0] = 1` and `table[i] = i * table[i-1]`.
    pub fn is_consistent(&self) -> bool {
        if self.table.first().is_none_or(|f| !f.is_one()) {
            return false;
        }
        self.table.windows(2).enumerate().all(|(i, w)| &w[0] * (i as u64 + 1) == w[1])
    }

    pub fn cache_path(dir: &Path, n_max: u64) -> PathBuf {
        dir.join(format!("factorials-{n_max}.bin"))
    }

    pub fn load_or_build(dir: &Path, n_max: u64) -> Result<Self> {
        let path = Self::cache_path(dir, n_max);
        if path.exists() {
            let table = Self::read_from(&mut io::BufReader::new(fs::File::open(&path)?))?;
            if table.n_max() == n_max {
                return Ok(table);
            }
        }
        let table = FactorialTable::new(n_max);
        fs::create_dir_all(dir)?;
        let mut out = io::BufWriter::new(fs::File::create(&path)?);
        table.write_to(&mut out)?;
        out.flush()?;
        Ok(table)
    }

    /// Layout: magic `FDLATFAC`, `u64` entry count, then per entry a `u64`
    /// limb count followed by that many `u64` limbs, least significant first.
    /// All integers little-endian.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&(self.table.len() as u64).to_le_bytes())?;
        for f in &self.table {
            let limbs = f.to_u64_digits();
            w.write_all(&(limbs.len() as u64).to_le_bytes())?;
            for limb in limbs {
                w.write_all(&limb.to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(Error::Cache("bad magic".into()));
        }
        let count = read_u64(r)?;
        if count == 0 {
            return Err(Error::Cache("empty table".into()));
        }
        let mut table = Vec::with_capacity(count.min(1 << 20) as usize);
        for _ in 0..count {
            let len = read_u64(r)?.checked_mul(8).ok_or_else(|| Error::Cache("limb count overflows".into()))?;
            let mut bytes = Vec::new();
            r.by_ref().take(len).read_to_end(&mut bytes)?;
            if bytes.len() as u64 != len {
                return Err(Error::Cache("truncated entry".into()));
            }
            table.push(Natural::from_bytes_le(&bytes));
        }
        let table = FactorialTable { table };
        if !table.is_consistent() {
            return Err(Error::Cache("entries are not consecutive factorials".into()));
        }
        Ok(table)
    }
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn binom_examples_and_convention() {
        assert_eq!(binom(5, 2), nat(10));
        assert_eq!(binom(3, -1), nat(0));
        assert_eq!(binom(2, 4), nat(0));
        assert_eq!(binom(-3, 1), nat(0));
        assert_eq!(binom(0, 0), nat(1));
    }

    #[test]
    fn fsp_and_factorial_examples() {
        assert_eq!(fsp(4), nat(6));
        assert_eq!(fsp(7), nat(35));
        assert_eq!(fsp(0), nat(1));
        assert_eq!(factorial(0), nat(1));
        assert_eq!(factorial(5), nat(120));
        assert_eq!(factorial(6), nat(720));
    }

    #[test]
    fn factorial_beyond_shared_table() {
        let n = SHARED_FACTORIAL_MAX + 2;
        let f = factorial(n);
        assert_eq!(f, factorial(n - 2) * (n - 1) * n);
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), nat(2));
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), nat(12));
        assert_eq!(multinomial(0, &[]).unwrap(), nat(1));
        assert!(matches!(multinomial(3, &[1, 1]), Err(Error::PartsMismatch { expected: 3, sum: 2 })));
    }

    #[test]
    fn pascal_and_row_sums() {
        for n in 1..=60i64 {
            for k in 0..=n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k), "n={n} k={k}");
            }
        }
        for n in 0..=60i64 {
            let sum: Natural = (0..=n).map(|k| binom(n, k)).sum();
            assert_eq!(sum, Natural::one() << n as usize);
        }
    }

    #[test]
    fn multinomial_two_parts_is_binomial() {
        for i in 0..=40u64 {
            for j in 0..=i {
                assert_eq!(multinomial(i, &[j, i - j]).unwrap(), binom(i as i64, j as i64));
            }
        }
    }

    #[test]
    fn fsp_monotone_with_even_odd_pairs() {
        for n in 0..61u64 {
            assert!(fsp(n) <= fsp(n + 1));
        }
        // odd step: C(2m+1, m) = C(2m, m) * (2m+1) / (m+1), equal only at m = 0
        assert_eq!(fsp(0), fsp(1));
        for m in 1..=30u64 {
            assert_eq!(fsp(2 * m + 1) * (m + 1), fsp(2 * m) * (2 * m + 1));
            assert!(fsp(2 * m) < fsp(2 * m + 1));
        }
    }

    #[test]
    fn window_matches_direct_binomials() {
        for m in 0..30u64 {
            let w = BinomialWindow::new(m, -4, m as i64 + 3);
            for k in -4..=m as i64 + 3 {
                let expected = binom(m as i64, k);
                let got = w.get(k).cloned().unwrap_or_default();
                assert_eq!(got, expected, "m={m} k={k}");
            }
        }
        assert!(BinomialWindow::new(3, 5, 9).get(5).is_none());
    }

    #[test]
    fn factorial_table_roundtrips_through_cache_format() {
        let table = FactorialTable::new(40);
        assert!(table.is_consistent());
        let mut buf = Vec::new();
        table.write_to(&mut buf).unwrap();
        let back = FactorialTable::read_from(&mut buf.as_slice()).unwrap();
        assert_eq!(back, table);

        buf[20] ^= 1;
        assert!(FactorialTable::read_from(&mut buf.as_slice()).is_err());
    }

    #[test]
    fn cache_directory_is_created_and_reused() {
        let dir = std::env::temp_dir().join(format!("fdlat-cache-{}", std::process::id()));
        let built = FactorialTable::load_or_build(&dir, 25).unwrap();
        assert!(FactorialTable::cache_path(&dir, 25).exists());
        let loaded = FactorialTable::load_or_build(&dir, 25).unwrap();
        assert_eq!(built, loaded);
        std::fs::remove_dir_all(&dir).ok();
    }

    proptest! {
        #[test]
        fn binom_symmetry(n in 0i64..200, k in 0i64..200) {
            prop_assume!(k <= n);
            prop_assert_eq!(binom(n, k), binom(n, n - k));
        }

        #[test]
        fn binom_matches_factorial_quotient(n in 0u64..120, k in 0u64..120) {
            prop_assume!(k <= n);
            let q = factorial(n) / (factorial(k) * factorial(n - k));
            prop_assert_eq!(binom(n as i64, k as i64), q);
        }
    }
}
