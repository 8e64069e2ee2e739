//! Correctly rounded scientific notation for exact integers and ratios.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Serialize, Serializer};

use crate::bigcomb::Natural;
use crate::error::{Error, Result};

/// `mantissa * 10^exponent`, with the mantissa written as `d.ddd`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScientificString {
    pub mantissa: String,
    pub exponent: i64,
}

impl ScientificString {
    /// Significant digits of the mantissa.
    pub fn digits(&self) -> usize {
        self.mantissa.chars().filter(char::is_ascii_digit).count()
    }

    /// The mantissa digits as an integer together with the power of ten
    /// of its last digit.
    fn scaled(&self) -> (Natural, i64) {
        let digits: String = self.mantissa.chars().filter(char::is_ascii_digit).collect();
        let unit = self.exponent - (self.digits() as i64 - 1);
        (digits.parse().unwrap_or_default(), unit)
    }

    /// The integer this string denotes when the exponent covers every digit.
    pub fn to_natural(&self) -> Option<Natural> {
        let (m, unit) = self.scaled();
        (unit >= 0).then(|| m * pow10(unit as u64))
    }

    /// Whether `x` lies within one unit in the last place of this value.
    pub fn within_one_ulp(&self, x: &Natural) -> bool {
        let (m, unit) = self.scaled();
        if unit >= 0 {
            let ulp = pow10(unit as u64);
            let v = m * &ulp;
            let diff = if &v > x { &v - x } else { x - &v };
            diff <= ulp
        } else {
            // compare x * 10^-unit with m
            let lhs = x * pow10(unit.unsigned_abs());
            let diff = if lhs > m { &lhs - &m } else { &m - &lhs };
            diff <= Natural::one()
        }
    }
}

impl fmt::Display for ScientificString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            f.write_str(&self.mantissa)
        } else {
            write!(f, "{}e{}", self.mantissa, self.exponent)
        }
    }
}

impl Serialize for ScientificString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for ScientificString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (m, e) = s.split_once(['e', 'E']).unwrap_or((s, "0"));
        let exponent = e.parse().map_err(|_| Error::Parse(s.to_string()))?;
        let valid = match m.split_once('.') {
            Some((a, b)) => a.len() == 1 && !b.is_empty() && (a.to_string() + b).bytes().all(|c| c.is_ascii_digit()),
            None => m.len() == 1 && m.bytes().all(|c| c.is_ascii_digit()),
        };
        if !valid {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(ScientificString { mantissa: m.to_string(), exponent })
    }
}

pub(crate) fn pow10(e: u64) -> Natural {
    Natural::from(10u32).pow(e)
}

fn mantissa_from_digits(digits: &str) -> String {
    if digits.len() == 1 {
        digits.to_string()
    } else {
        format!("{}.{}", &digits[..1], &digits[1..])
    }
}

/// Rounds `x` to `sig` significant digits, halves rounded away from zero.
pub fn format_scientific(x: &Natural, sig: usize) -> ScientificString {
    assert!(sig >= 1, "need at least one significant digit");
    if x.is_zero() {
        return ScientificString { mantissa: "0".into(), exponent: 0 };
    }
    let digits = x.to_str_radix(10);
    let mut exponent = digits.len() as i64 - 1;
    if digits.len() <= sig {
        let padded = format!("{digits:0<sig$}");
        return ScientificString { mantissa: mantissa_from_digits(&padded), exponent };
    }
    let mut head: Natural = digits[..sig].parse().expect("decimal digits");
    if digits.as_bytes()[sig] >= b'5' {
        head += 1u32;
    }
    let mut head = head.to_str_radix(10);
    if head.len() > sig {
        head.truncate(sig);
        exponent += 1;
    }
    ScientificString { mantissa: mantissa_from_digits(&head), exponent }
}

/// Rounds `num / den` to `sig` significant digits, halves rounded away from zero.
pub fn format_ratio(num: &Natural, den: &Natural, sig: usize) -> ScientificString {
    assert!(sig >= 1, "need at least one significant digit");
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return ScientificString { mantissa: "0".into(), exponent: 0 };
    }
    // exponent e with 10^e <= num/den < 10^(e+1)
    let mut e = num.to_str_radix(10).len() as i64 - den.to_str_radix(10).len() as i64;
    let at_least = |e: i64| {
        if e >= 0 {
            num >= &(den * pow10(e as u64))
        } else {
            num * pow10(e.unsigned_abs()) >= *den
        }
    };
    if !at_least(e) {
        e -= 1;
    }
    // scaled = num * 10^(sig-1-e) / den, rounded
    let shift = sig as i64 - 1 - e;
    let (n2, d2) = if shift >= 0 {
        (num * pow10(shift as u64), den.clone())
    } else {
        (num.clone(), den * pow10(shift.unsigned_abs()))
    };
    let (q, rem) = n2.div_rem(&d2);
    let q = if rem * 2u32 >= d2 { q + 1u32 } else { q };
    let mut head = q.to_str_radix(10);
    if head.len() > sig {
        head.truncate(sig);
        e += 1;
    }
    ScientificString { mantissa: mantissa_from_digits(&head), exponent: e }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn scientific_examples() {
        assert_eq!(format_scientific(&nat(30786), 4).to_string(), "3.079e4");
        assert_eq!(format_scientific(&nat(17672631900), 6).to_string(), "1.76726e10");
        assert_eq!(format_scientific(&nat(0), 3).to_string(), "0");
        assert_eq!(format_scientific(&nat(99995), 4).to_string(), "1.000e5");
        assert_eq!(format_scientific(&nat(12), 4).to_string(), "1.200e1");
        assert_eq!(format_scientific(&nat(7), 1).to_string(), "7");
        assert_eq!(format_scientific(&nat(15), 1).to_string(), "2e1");
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(format_ratio(&nat(1), &nat(3), 4).to_string(), "3.333e-1");
        assert_eq!(format_ratio(&nat(2), &nat(3), 4).to_string(), "6.667e-1");
        assert_eq!(format_ratio(&nat(10), &nat(1), 3).to_string(), "1.00e1");
        assert_eq!(format_ratio(&nat(9999), &nat(10000), 3).to_string(), "1.00");
        assert_eq!(format_ratio(&nat(17107), &nat(16200), 10).to_string(), "1.055987654");
    }

    #[test]
    fn parse_roundtrip() {
        let s: ScientificString = "1.562662e88".parse().unwrap();
        assert_eq!(s.exponent, 88);
        assert_eq!(s.digits(), 7);
        assert_eq!(s.to_string(), "1.562662e88");
        assert!("1.5.6e3".parse::<ScientificString>().is_err());
        assert!("12e3".parse::<ScientificString>().is_err());
    }

    proptest! {
        #[test]
        fn rounding_is_within_half_ulp(x in 1u64..u64::MAX, sig in 1usize..12) {
            let x = nat(x);
            let s = format_scientific(&x, sig);
            prop_assert_eq!(s.digits(), sig);
            prop_assert!(s.within_one_ulp(&x));
            let back: ScientificString = s.to_string().parse().unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn ratio_agrees_with_scientific_for_unit_denominator(x in 1u64..u64::MAX, sig in 1usize..12) {
            let x = nat(x);
            prop_assert_eq!(format_ratio(&x, &nat(1), sig), format_scientific(&x, sig));
        }
    }
}
