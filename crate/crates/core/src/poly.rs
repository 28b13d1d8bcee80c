//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending degree order with no trailing
//! zeros; the zero polynomial is the empty vector and has no degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&v| int(v)).collect())
    }

    /// `c * prod (x - r)` over the given roots.
    pub fn from_roots(c: Rational, roots: &[Rational]) -> Self {
        roots.iter().fold(Poly::constant(c), |acc, r| {
            &acc * &Poly::from_coeffs(vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derive(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn derive_n(&self, n: usize) -> Poly {
        if n >= self.coeffs.len() {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(n)
                .map(|(k, c)| c * rational::big(rational::falling(k as u64, n as u64)))
                .collect(),
        )
    }

    /// `p^(k)(0)`.
    pub fn derivative_at_zero(&self, k: usize) -> Rational {
        self.coeff(k) * rational::factorial_q(k as u64)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(alpha*x + beta)`.
    pub fn compose_affine(&self, alpha: &Rational, beta: &Rational) -> Result<Poly> {
        if alpha.is_zero() {
            return Err(Error::InvalidArgument("compose_affine requires alpha != 0".into()));
        }
        let inner = Poly::from_coeffs(vec![beta.clone(), alpha.clone()]);
        Ok(self.compose(&inner))
    }

    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for i in (0..n - dd).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Render with a chosen variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = if rational::is_integer(&mag) {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match k {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&coef);
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }

    /// Parses expressions such as `4x^2 - 2`, `x^2+n`, `-1/2*x^3 + (3/2)x`
    /// in the given variable.
    pub fn parse(input: &str, var: char) -> Result<Poly> {
        let err = |reason: &str| Error::PolyParse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty"));
        }
        let mut i = 0;
        let mut acc = Poly::zero();
        while i < s.len() {
            let mut sign = Rational::one();
            while i < s.len() && (s[i] == '+' || s[i] == '-') {
                if s[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let paren = i < s.len() && s[i] == '(';
            if paren {
                i += 1;
            }
            let start = i;
            while i < s.len() && (s[i].is_ascii_digit() || s[i] == '.' || s[i] == '/' || (paren && s[i] == '-')) {
                i += 1;
            }
            let coef_text: String = s[start..i].iter().collect();
            if paren {
                if i >= s.len() || s[i] != ')' {
                    return Err(err("unbalanced parenthesis"));
                }
                i += 1;
            }
            let has_coef = !coef_text.is_empty();
            let coef = if has_coef {
                rational::parse_rational(&coef_text).map_err(|_| err("bad coefficient"))?
            } else {
                Rational::one()
            };
            if i < s.len() && s[i] == '*' {
                i += 1;
                if i >= s.len() || s[i] != var {
                    return Err(err("expected variable after '*'"));
                }
            }
            let mut power = 0usize;
            if i < s.len() && s[i] == var {
                i += 1;
                power = 1;
                if i < s.len() && s[i] == '^' {
                    i += 1;
                    let ps = i;
                    while i < s.len() && s[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text: String = s[ps..i].iter().collect();
                    power = text.parse().map_err(|_| err("bad exponent"))?;
                }
            } else if !has_coef {
                return Err(err("expected coefficient or variable"));
            }
            if i < s.len() && s[i] != '+' && s[i] != '-' {
                return Err(err(&format!("unexpected character '{}'", s[i])));
            }
            acc = &acc + &Poly::monomial(sign * coef, power);
        }
        Ok(acc)
    }

    /// Accepts either the JSON object encoding or an expression in `x`.
    pub fn parse_any(input: &str) -> Result<Poly> {
        if input.trim_start().starts_with('{') {
            Ok(serde_json::from_str(input)?)
        } else {
            Poly::parse(input, 'x')
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    #[serde(with = "rational::serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr { coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Poly::from_coeffs(PolyRepr::deserialize(d)?.coeffs))
    }
}
