//! Classical orthogonal polynomial bases and change of basis.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{self, binom, big, factorial, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Monomial,
    Hermite,
    Laguerre,
    Legendre,
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "monomial" => Ok(BasisKind::Monomial),
            "hermite" => Ok(BasisKind::Hermite),
            "laguerre" => Ok(BasisKind::Laguerre),
            "legendre" => Ok(BasisKind::Legendre),
            other => Err(Error::UnsupportedBasis(other.to_string())),
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Monomial => "monomial",
            BasisKind::Hermite => "hermite",
            BasisKind::Laguerre => "laguerre",
            BasisKind::Legendre => "legendre",
        })
    }
}

/// A polynomial basis `{B_n(alpha x + beta)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub kind: BasisKind,
    pub affine: Option<(Rational, Rational)>,
}

impl Basis {
    pub fn new(kind: BasisKind) -> Self {
        Basis { kind, affine: None }
    }

    pub fn monomial() -> Self {
        Basis::new(BasisKind::Monomial)
    }

    pub fn hermite() -> Self {
        Basis::new(BasisKind::Hermite)
    }

    pub fn laguerre() -> Self {
        Basis::new(BasisKind::Laguerre)
    }

    pub fn legendre() -> Self {
        Basis::new(BasisKind::Legendre)
    }

    /// `B_n(alpha x + beta)`; `alpha` must be nonzero.
    pub fn with_affine(kind: BasisKind, alpha: Rational, beta: Rational) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::InvalidArgument("basis scale must be nonzero".into()));
        }
        Ok(Basis {
            kind,
            affine: Some((alpha, beta)),
        })
    }

    pub fn shifted(kind: BasisKind, beta: Rational) -> Self {
        Basis {
            kind,
            affine: Some((int(1), beta)),
        }
    }

    pub fn is_unshifted(&self) -> bool {
        match &self.affine {
            None => true,
            Some((a, b)) => *a == int(1) && b.is_zero(),
        }
    }

    pub fn poly(&self, n: usize) -> Poly {
        basis_poly(self, n)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.affine {
            None => write!(f, "{}", self.kind),
            Some((a, b)) => write!(f, "{}({}x + {})", self.kind, a, b),
        }
    }
}

fn raw_basis_poly(kind: BasisKind, n: usize) -> Poly {
    let n64 = n as u64;
    let mut coeffs = vec![Rational::zero(); n + 1];
    match kind {
        BasisKind::Monomial => coeffs[n] = int(1),
        BasisKind::Hermite => {
            for k in 0..=n / 2 {
                let num = factorial(n64) * big_pow2(n - 2 * k);
                let den = factorial(k as u64) * factorial((n - 2 * k) as u64);
                coeffs[n - 2 * k] = rational::sign_pow(k as i64) * Rational::new(num, den);
            }
        }
        BasisKind::Laguerre => {
            for (k, c) in coeffs.iter_mut().enumerate() {
                *c = rational::sign_pow(k as i64) * big(binom(n as i64, k as i64))
                    / rational::factorial_q(k as u64);
            }
        }
        BasisKind::Legendre => {
            for k in 0..=n / 2 {
                let num = binom(n as i64, k as i64) * binom(2 * (n - k) as i64, n as i64);
                coeffs[n - 2 * k] = rational::sign_pow(k as i64) * Rational::new(num, big_pow2(n));
            }
        }
    }
    Poly::from_coeffs(coeffs)
}

fn big_pow2(e: usize) -> num_bigint::BigInt {
    num_bigint::BigInt::from(1) << e
}

/// The `n`-th basis polynomial, with the affine substitution applied last.
pub fn basis_poly(b: &Basis, n: usize) -> Poly {
    let p = raw_basis_poly(b.kind, n);
    match &b.affine {
        Some((alpha, beta)) => p.compose_affine(alpha, beta).expect("alpha checked at construction"),
        None => p,
    }
}

/// `B_n^{(k)}(0)`. Hermite and Laguerre use closed forms; Legendre and
/// monomial bases differentiate directly. Affine bases are rejected.
pub fn deriv_at_zero(b: &Basis, n: usize, k: usize) -> Result<Rational> {
    if b.affine.is_some() {
        return Err(Error::UnsupportedBasis(format!("{b}: derivative-at-zero needs an unshifted basis")));
    }
    if k > n {
        return Ok(Rational::zero());
    }
    Ok(match b.kind {
        BasisKind::Hermite => {
            let gap = n - k;
            if gap % 2 == 1 {
                Rational::zero()
            } else {
                let j = gap / 2;
                rational::sign_pow(j as i64)
                    * Rational::new(factorial(n as u64) * big_pow2(k), factorial(j as u64))
            }
        }
        BasisKind::Laguerre => rational::sign_pow(k as i64) * big(binom(n as i64, k as i64)),
        BasisKind::Legendre | BasisKind::Monomial => basis_poly(b, n).derivative_at_zero(k),
    })
}

/// Coefficients `c_0..c_d` with `sum c_k B_k = p`.
pub fn expand_in_basis(p: &Poly, b: &Basis) -> Vec<Rational> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    let mut rem = p.clone();
    let mut out = vec![Rational::zero(); d + 1];
    for k in (0..=d).rev() {
        let c = rem.coeff(k);
        if c.is_zero() {
            continue;
        }
        let bk = basis_poly(b, k);
        let ck = c / bk.leading().expect("basis polynomials are nonzero");
        rem = &rem - &bk.scale(&ck);
        out[k] = ck;
    }
    out
}

/// Inverse of [`expand_in_basis`].
pub fn combine_in_basis(coeffs: &[Rational], b: &Basis) -> Poly {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Poly::zero(), |acc, (k, c)| &acc + &basis_poly(b, k).scale(c))
}

/// The real polynomial `i^m H_m(i x)`.
pub fn hermite_imag(m: usize) -> Poly {
    let mut coeffs = vec![Rational::zero(); m + 1];
    let sign = rational::sign_pow(m as i64);
    for k in 0..=m / 2 {
        let num = factorial(m as u64) * big_pow2(m - 2 * k);
        let den = factorial(k as u64) * factorial((m - 2 * k) as u64);
        coeffs[m - 2 * k] = &sign * Rational::new(num, den);
    }
    Poly::from_coeffs(coeffs)
}
