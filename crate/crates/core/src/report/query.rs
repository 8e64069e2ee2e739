//! Parsing exact naturals and answering `Gmin` queries.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bigcomb::Natural;
use crate::error::{Error, Result};
use crate::gmin::{gmin_power, EstimatePair, GminResult};
use crate::report::scientific::{format_scientific, pow10};

fn parse_mantissa(s: &str) -> Option<(Natural, u64)> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() || !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    Some((digits.parse().ok()?, frac.len() as u64))
}

/// Parses an exact natural number.
///
/// Accepted forms: plain digits (`_` separators allowed), `<m>e<x>`,
/// `<m>*10^<x>` and `10^<x>`, where the mantissa `m` may have a decimal
/// point as long as the value is an integer, so `1.489e1798` is
/// `1489 * 10^1795`.
pub fn parse_natural(input: &str) -> Result<Natural> {
    let err = || Error::Parse(input.to_string());
    let s: String = input.trim().chars().filter(|&c| c != '_').collect();
    let (mantissa, exp) = if let Some((m, e)) = s.split_once(['e', 'E']) {
        (m.to_string(), e.to_string())
    } else if let Some((m, e)) = s.split_once("*10^") {
        (m.to_string(), e.to_string())
    } else if let Some(e) = s.strip_prefix("10^") {
        ("1".to_string(), e.to_string())
    } else {
        (s.clone(), "0".to_string())
    };
    let exp: u64 = exp.parse().map_err(|_| err())?;
    let (digits, frac) = parse_mantissa(&mantissa).ok_or_else(err)?;
    if frac > exp {
        let unit = pow10(frac - exp);
        if !(&digits % &unit).is_zero() {
            return Err(err());
        }
        return Ok(digits / unit);
    }
    Ok(digits * pow10(exp - frac))
}

/// Exact digits for short values, correctly rounded scientific form for long ones.
pub fn display_natural(x: &Natural) -> String {
    let digits = x.to_str_radix(10);
    if digits.len() <= 24 {
        digits
    } else {
        format!("~{}", format_scientific(x, 13))
    }
}

pub fn gmin_json(res: &GminResult) -> Value {
    json!({
        "check": "gmin",
        "r": res.r,
        "k": res.k.to_string(),
        "pair": res.pair,
        "outcome": res.outcome,
        "witnesses": {
            "n": res.witnesses.n,
            "lower_n": res.witnesses.lower_n.to_string(),
            "upper_n": res.witnesses.upper_n.to_string(),
            "lower_next": res.witnesses.lower_next.to_string(),
        },
    })
}

pub fn gmin_text(res: &GminResult) -> String {
    let w = &res.witnesses;
    let (lower, upper) = res.pair.split_once('/').unwrap_or((&res.pair, ""));
    let relation = if w.upper_n < res.k { "<" } else { ">=" };
    format!(
        "Gmin(FD({r})^k) for k = {k}: {outcome}\n  {lower}({n}) = {ln} < k\n  {upper}({n}) = {un} {relation} k\n  {lower}({n1}) = {lx} >= k\n",
        r = res.r,
        k = display_natural(&res.k),
        outcome = res.outcome,
        n = w.n,
        n1 = w.n + 1,
        ln = display_natural(&w.lower_n),
        un = display_natural(&w.upper_n),
        lx = display_natural(&w.lower_next),
    )
}

/// Decides `Gmin(FD(r)^k)` with the default estimate pair for `r`.
pub fn gmin_query(r: u64, k: &str) -> Result<GminResult> {
    let k = parse_natural(k)?;
    if k.is_zero() || k.is_one() {
        return Err(Error::Constraint("k must be at least 2".into()));
    }
    gmin_power(r, &k, &EstimatePair::default_for(r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmin::GminOutcome;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_natural("30000").unwrap(), Natural::from(30000u32));
        assert_eq!(parse_natural("30_000").unwrap(), Natural::from(30000u32));
        assert_eq!(parse_natural("3e4").unwrap(), Natural::from(30000u32));
        assert_eq!(parse_natural("1489*10^3").unwrap(), Natural::from(1489000u32));
        assert_eq!(parse_natural("1.489e3").unwrap(), Natural::from(1489u32));
        assert_eq!(parse_natural("10^2").unwrap(), Natural::from(100u32));
        assert_eq!(parse_natural("1.489e1798").unwrap(), parse_natural("1489e1795").unwrap());
        for bad in ["", "abc", "1.5", "1.25e1", "-3", "1e", "e5", ".5e3"] {
            assert!(parse_natural(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn query_examples() {
        assert_eq!(gmin_query(3, "30000").unwrap().outcome, GminOutcome::Exact(20));
        assert_eq!(gmin_query(4, "20000").unwrap().outcome, GminOutcome::Ambiguous(20, 21));
        assert!(gmin_query(3, "1").is_err());
        assert!(gmin_query(3, "x").is_err());
    }

    #[test]
    fn json_and_text_rendering() {
        let res = gmin_query(3, "30000").unwrap();
        let j = gmin_json(&res);
        assert_eq!(j["outcome"]["exact"], 20);
        assert_eq!(j["k"], "30000");
        assert_eq!(j["witnesses"]["upper_n"], "17107");
        let t = gmin_text(&res);
        assert!(t.starts_with("Gmin(FD(3)^k) for k = 30000: Exact 20"));
        assert!(t.contains("flat3(19) = 16200 < k"));
    }
}
