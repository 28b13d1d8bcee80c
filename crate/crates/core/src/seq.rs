//! Symbolic eigenvalue sequences `{gamma_n}`.
//!
//! Grammar (as accepted on the command line):
//! `list:2,3,4` | `poly:n^2+n+1` | `altpoly:n` (meaning `(-1)^n * n`) |
//! `geom:1/2` | `pow:5/2@1e12`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{self, int, Rational};

/// Default denominator bound for [`SeqSpec::ApproxPow`].
pub const DEFAULT_POW_PRECISION: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqSpec {
    /// A finite prefix `gamma_0, gamma_1, ...`; indices past the end are errors.
    ExplicitList(Vec<Rational>),
    /// `gamma_n = p(n)`.
    PolyInN(Poly),
    /// `gamma_n = (-1)^n p(n)`.
    AltPolyInN(Poly),
    /// `gamma_n = r^n`.
    Geometric(Rational),
    /// `gamma_n ~ n^q`, rounded down to a multiple of `1/precision`.
    ApproxPow { exponent: Rational, precision: BigInt },
}

impl SeqSpec {
    pub fn poly(text: &str) -> Result<SeqSpec> {
        Ok(SeqSpec::PolyInN(Poly::parse(text, 'n')?))
    }

    pub fn pow(exponent: Rational) -> SeqSpec {
        SeqSpec::ApproxPow {
            exponent,
            precision: BigInt::from(DEFAULT_POW_PRECISION),
        }
    }

    pub fn is_exact(&self) -> bool {
        match self {
            SeqSpec::ApproxPow { exponent, .. } => exact_pow_exponent(exponent).is_some(),
            _ => true,
        }
    }

    /// Bound on `|eval(n) - true value|`, uniform in `n`.
    pub fn error_bound(&self) -> Rational {
        match self {
            SeqSpec::ApproxPow { precision, .. } if !self.is_exact() => Rational::new(BigInt::one(), precision.clone()),
            _ => Rational::zero(),
        }
    }

    /// Number of available terms, `None` when unbounded.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        match self {
            SeqSpec::ExplicitList(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn eval(&self, n: usize) -> Result<Rational> {
        let nq = int(n as i64);
        match self {
            SeqSpec::ExplicitList(v) => v.get(n).cloned().ok_or_else(|| {
                Error::SequenceValue(format!("explicit list has {} terms, index {n} requested", v.len()))
            }),
            SeqSpec::PolyInN(p) => Ok(p.eval(&nq)),
            SeqSpec::AltPolyInN(p) => Ok(rational::sign_pow(n as i64) * p.eval(&nq)),
            SeqSpec::Geometric(r) => Ok(rational::pow(r, n as u32)),
            SeqSpec::ApproxPow { exponent, precision } => approx_pow(n, exponent, precision),
        }
    }

    pub fn values(&self, count: usize) -> Result<Vec<Rational>> {
        (0..count).map(|n| self.eval(n)).collect()
    }

    /// The sign-flipped sequence `(-1)^n gamma_n`, when representable.
    pub fn flipped(&self) -> Option<SeqSpec> {
        Some(match self {
            SeqSpec::ExplicitList(v) => SeqSpec::ExplicitList(
                v.iter().enumerate().map(|(k, g)| rational::sign_pow(k as i64) * g).collect(),
            ),
            SeqSpec::PolyInN(p) => SeqSpec::AltPolyInN(p.clone()),
            SeqSpec::AltPolyInN(p) => SeqSpec::PolyInN(p.clone()),
            SeqSpec::Geometric(r) => SeqSpec::Geometric(-r),
            SeqSpec::ApproxPow { .. } => return None,
        })
    }
}

/// `Some(k)` when `q` is a non-negative integer `k`.
pub(crate) fn exact_pow_exponent(q: &Rational) -> Option<u32> {
    if rational::is_integer(q) && !q.is_negative() {
        q.to_integer().to_u32()
    } else {
        None
    }
}

fn approx_pow(n: usize, q: &Rational, precision: &BigInt) -> Result<Rational> {
    if let Some(k) = exact_pow_exponent(q) {
        return Ok(rational::pow(&int(n as i64), k));
    }
    if !precision.is_positive() {
        return Err(Error::SequenceValue("approximate power needs a positive precision".into()));
    }
    if n == 0 {
        return if q.is_positive() {
            Ok(Rational::zero())
        } else {
            Err(Error::SequenceValue(format!("0^{q} is undefined")))
        };
    }
    let a = q.numer().abs().to_u32().ok_or_else(|| Error::SequenceValue("exponent too large".into()))?;
    let b = q.denom().to_u32().ok_or_else(|| Error::SequenceValue("exponent too large".into()))?;
    let nb = BigInt::from(n).pow(a);
    let pb = precision.pow(b);
    let radicand = if q.is_positive() { nb * pb } else { pb / nb };
    Ok(Rational::new(rational::floor_root(&radicand, b), precision.clone()))
}

impl FromStr for SeqSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<SeqSpec> {
        let bad = |reason: &str| Error::SeqSpec {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (kind, body) = s.split_once(':').ok_or_else(|| bad("expected `<kind>:<body>`"))?;
        let body = body.trim();
        match kind.trim() {
            "list" => {
                if body.is_empty() {
                    return Err(bad("empty list"));
                }
                let vals = body
                    .split(',')
                    .map(rational::parse_rational)
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| bad(&e.to_string()))?;
                Ok(SeqSpec::ExplicitList(vals))
            }
            "poly" => Ok(SeqSpec::PolyInN(Poly::parse(body, 'n').map_err(|e| bad(&e.to_string()))?)),
            "altpoly" => Ok(SeqSpec::AltPolyInN(Poly::parse(body, 'n').map_err(|e| bad(&e.to_string()))?)),
            "geom" => Ok(SeqSpec::Geometric(rational::parse_rational(body).map_err(|e| bad(&e.to_string()))?)),
            "pow" => {
                let (q, p) = match body.split_once('@') {
                    Some((q, p)) => (q, Some(p)),
                    None => (body, None),
                };
                let exponent = rational::parse_rational(q).map_err(|e| bad(&e.to_string()))?;
                let precision = match p {
                    Some(p) => {
                        let r = rational::parse_rational(p).map_err(|e| bad(&e.to_string()))?;
                        if !rational::is_integer(&r) || !r.is_positive() {
                            return Err(bad("precision must be a positive integer"));
                        }
                        r.to_integer()
                    }
                    None => BigInt::from(DEFAULT_POW_PRECISION),
                };
                Ok(SeqSpec::ApproxPow { exponent, precision })
            }
            other => Err(bad(&format!("unknown kind `{other}`"))),
        }
    }
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSpec::ExplicitList(v) => write!(f, "list:{}", rational::rationals_to_strings(v).join(",")),
            SeqSpec::PolyInN(p) => write!(f, "poly:{}", p.render("n").replace(' ', "")),
            SeqSpec::AltPolyInN(p) => write!(f, "altpoly:{}", p.render("n").replace(' ', "")),
            SeqSpec::Geometric(r) => write!(f, "geom:{r}"),
            SeqSpec::ApproxPow { exponent, precision } => write!(f, "pow:{exponent}@{precision}"),
        }
    }
}

impl Serialize for SeqSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SeqSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
