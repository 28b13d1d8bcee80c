//! Closed forms for Laguerre diagonal operators `T[L_n] = gamma_n L_n`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bases::{basis_poly, Basis, BasisKind};
use crate::error::{Error, Result};
use crate::jensen::{gstar_polynomial, inverse_binomial_transform};
use crate::peetre::peetre_expand;
use crate::poly::Poly;
use crate::rational::{self, big, binom, binom_q, factorial_q, falling, frac, int, Rational};
use crate::seq::SeqSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaguerreMethod {
    Recursion,
    Jensen,
    Basis,
}

impl std::str::FromStr for LaguerreMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recursion" => Ok(LaguerreMethod::Recursion),
            "jensen" => Ok(LaguerreMethod::Jensen),
            "basis" => Ok(LaguerreMethod::Basis),
            other => Err(Error::InvalidArgument(format!("unknown Laguerre method `{other}`"))),
        }
    }
}

pub fn laguerre_qk(method: LaguerreMethod, b: &Basis, s: &SeqSpec, k: usize) -> Result<Poly> {
    if b.kind != BasisKind::Laguerre {
        return Err(Error::UnsupportedBasis(format!("{b} is not a Laguerre basis")));
    }
    if method != LaguerreMethod::Recursion && !b.is_unshifted() {
        return Err(Error::UnsupportedBasis(format!(
            "{b}: closed-form Laguerre formulas need the unshifted basis"
        )));
    }
    match method {
        LaguerreMethod::Recursion => Ok(peetre_expand(b, s, k)?.term(k)),
        LaguerreMethod::Jensen => laguerre_qk_jensen(s, k),
        LaguerreMethod::Basis => laguerre_qk_basis(s, k),
    }
}

/// `Q_n = sum_k x^k/k! sum_p (-1)^{n-k} C(n-k, p-k) C(p, n-k) g_p^*(-1)`.
pub fn laguerre_qk_jensen(s: &SeqSpec, n: usize) -> Result<Poly> {
    let g = inverse_binomial_transform(&s.values(n + 1)?);
    let ni = n as i64;
    let coeffs = (0..=n)
        .map(|k| {
            let ki = k as i64;
            let inner = (k..=n).fold(Rational::zero(), |acc, p| {
                let pi = p as i64;
                acc + big(binom(ni - ki, pi - ki) * binom(pi, ni - ki)) * &g[p]
            });
            rational::sign_pow(ni - ki) * inner / factorial_q(k as u64)
        })
        .collect();
    Ok(Poly::from_coeffs(coeffs))
}

/// `Q_n = sum_k (-x)^k/k! sum_j C(n-k, j) (-1)^j gamma_j L_j(x)`.
pub fn laguerre_qk_basis(s: &SeqSpec, n: usize) -> Result<Poly> {
    let gammas = s.values(n + 1)?;
    let lag: Vec<Poly> = (0..=n).map(|j| basis_poly(&Basis::laguerre(), j)).collect();
    let mut out = Poly::zero();
    for k in 0..=n {
        let mut inner = Poly::zero();
        for j in 0..=n - k {
            let c = binom_q((n - k) as i64, j as i64) * rational::sign_pow(j as i64) * &gammas[j];
            if !c.is_zero() {
                inner = &inner + &lag[j].scale(&c);
            }
        }
        let w = rational::sign_pow(k as i64) / factorial_q(k as u64);
        out = &out + &(&Poly::monomial(w, k) * &inner);
    }
    Ok(out)
}

/// `b_{n,m} = sum_k C(m,k) (-1)^n/n! sum_j C(n,j) (k+j)!/(k+j-n)! g_{k+j}^*(-1)`.
pub fn laguerre_bnm(s: &SeqSpec, n: usize, m: usize) -> Result<Rational> {
    let g = inverse_binomial_transform(&s.values(m + n + 1)?);
    let pre = rational::sign_pow(n as i64) / factorial_q(n as u64);
    let mut total = Rational::zero();
    for k in 0..=m {
        let inner = (0..=n).fold(Rational::zero(), |acc, j| {
            acc + big(binom(n as i64, j as i64) * falling((k + j) as u64, n as u64)) * &g[k + j]
        });
        total += binom_q(m as i64, k as i64) * inner;
    }
    Ok(total * pre)
}

/// `h_n = (-1)^n/n! (1+x)^n D^n f` with `f = sum g_k^*(-1) x^k`, which must
/// be a polynomial.
pub fn laguerre_hn(s: &SeqSpec, n: usize) -> Result<Poly> {
    let f = gstar_polynomial(s)?;
    let c = rational::sign_pow(n as i64) / factorial_q(n as u64);
    Ok((&Poly::from_ints(&[1, 1]).pow(n as u32) * &f.derive_n(n)).scale(&c))
}

/// `h_0 = f`, `h_n = -1/n ((1-n) h_{n-1} + (x+1) h_{n-1}')`.
pub fn laguerre_hn_recursive(s: &SeqSpec, n: usize) -> Result<Poly> {
    let mut h = gstar_polynomial(s)?;
    let xp1 = Poly::from_ints(&[1, 1]);
    for i in 1..=n {
        let next = &h.scale(&int(1 - i as i64)) + &(&xp1 * &h.derive());
        h = next.scale(&frac(-1, i as i64));
    }
    Ok(h)
}

/// Both sides of
/// `sum_{k<=n} sum_{j<=m} C(m,j) C(k-j,p-j) C(p,k-j) C(n+1,k+m-j)
///   = C(n+1,p) C(n+1,m) - C(n+1-m,p-m) C(p,n+1-m)`,
/// with `C(a,b) = 0` unless `0 <= b <= a`.
pub fn identity_horrible(n: i64, m: i64, p: i64) -> (BigInt, BigInt) {
    let mut lhs = BigInt::zero();
    for k in 0..=n {
        for j in 0..=m {
            lhs += binom(m, j) * binom(k - j, p - j) * binom(p, k - j) * binom(n + 1, k + m - j);
        }
    }
    let rhs = binom(n + 1, p) * binom(n + 1, m) - binom(n + 1 - m, p - m) * binom(p, n + 1 - m);
    (lhs, rhs)
}

/// `(sum_j C(m,j) C(l,p-j), C(m+l,p))`.
pub fn vandermonde(m: i64, l: i64, p: i64) -> (BigInt, BigInt) {
    let lhs = (0..=p).fold(BigInt::zero(), |acc, j| acc + binom(m, j) * binom(l, p - j));
    (lhs, binom(m + l, p))
}

/// Outcome of sweeping an identity over a cube of arguments.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SweepReport {
    pub name: String,
    pub max: i64,
    pub cases: usize,
    pub failures: Vec<(i64, i64, i64)>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn sweep_identity(name: &str, max: i64) -> Result<SweepReport> {
    let f: fn(i64, i64, i64) -> (BigInt, BigInt) = match name {
        "horrible" => identity_horrible,
        "vandermonde" => vandermonde,
        other => return Err(Error::InvalidArgument(format!("unknown identity `{other}`"))),
    };
    if max < 0 {
        return Err(Error::InvalidArgument("sweep bound must be non-negative".into()));
    }
    let mut cases = 0;
    let mut failures = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                cases += 1;
                let (l, r) = f(a, b, c);
                if l != r {
                    failures.push((a, b, c));
                }
            }
        }
    }
    Ok(SweepReport {
        name: name.to_string(),
        max,
        cases,
        failures,
    })
}
