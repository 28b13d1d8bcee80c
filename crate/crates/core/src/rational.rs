//! Exact rational scalars and the small integer combinatorics used
//! throughout (binomials with the zero-outside-Pascal convention,
//! factorials, falling factorials).

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn to_canonical(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"3"`, `"-1/2"`, `"0.25"` or `"1e12"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::RationalParse(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, fraction) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fraction.is_empty() {
        return Err(err());
    }
    if !whole.chars().chain(fraction.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: String = format!("{whole}{fraction}");
    let mut value = big(BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| err())?);
    let shift = exp - fraction.len() as i32;
    let ten = int(10);
    if shift >= 0 {
        value *= pow(&ten, shift as u32);
    } else {
        value /= pow(&ten, (-shift) as u32);
    }
    Ok(if neg { -value } else { value })
}

pub fn pow(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient with the zero-outside-Pascal convention:
/// `C(n, k) = 0` unless `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binom_q(n: i64, k: i64) -> Rational {
    big(binom(n, k))
}

pub fn factorial_q(n: u64) -> Rational {
    big(factorial(n))
}

/// Falling factorial `a!/(a-n)!`, zero when `a < n`.
pub fn falling(a: u64, n: u64) -> BigInt {
    if a < n {
        return BigInt::zero();
    }
    ((a - n + 1)..=a).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Integer `b`-th root, rounded down, of a non-negative integer.
pub fn floor_root(x: &BigInt, b: u32) -> BigInt {
    x.nth_root(b)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Serde adapter: rationals travel as canonical strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_canonical(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&to_canonical(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_canonical).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-2/4").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_rational("1e12").unwrap(), int(1_000_000_000_000));
        assert_eq!(parse_rational("-1.5e-1").unwrap(), frac(-3, 20));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(to_canonical(&frac(6, -4)), "-3/2");
        assert_eq!(to_canonical(&int(7)), "7");
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(-1, 0), BigInt::zero());
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(3, 4), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::zero());
        assert_eq!(falling(4, 0), BigInt::one());
    }

    #[test]
    fn roots() {
        assert_eq!(floor_root(&BigInt::from(1000), 3), BigInt::from(10));
        assert_eq!(floor_root(&BigInt::from(999), 3), BigInt::from(9));
    }
}
