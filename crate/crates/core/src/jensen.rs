//! Jensen polynomials, reversed Jensen values at `-1`, binomial transforms
//! and the classical diagonal operator `sum_k g_k^*(-1)/k! x^k D^k`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::peetre::DiffOp;
use crate::poly::Poly;
use crate::rational::{self, binom_q, factorial_q, Rational};
use crate::seq::{exact_pow_exponent, SeqSpec};

/// `g_n(x) = sum_k C(n,k) gamma_k x^k`.
pub fn jensen_poly(s: &SeqSpec, n: usize) -> Result<Poly> {
    jensen_from_values(&s.values(n + 1)?, n)
}

pub fn jensen_from_values(gammas: &[Rational], n: usize) -> Result<Poly> {
    if gammas.len() <= n {
        return Err(Error::SequenceValue(format!("need {} terms, have {}", n + 1, gammas.len())));
    }
    Ok(Poly::from_coeffs(
        (0..=n).map(|k| binom_q(n as i64, k as i64) * &gammas[k]).collect(),
    ))
}

/// `g_n^*(-1) = sum_k C(n,k) gamma_k (-1)^{n-k}`.
pub fn reversed_jensen_at_minus1(s: &SeqSpec, n: usize) -> Result<Rational> {
    Ok(inverse_binomial_transform(&s.values(n + 1)?)[n].clone())
}

/// `g_0^*(-1), ..., g_{count-1}^*(-1)`.
pub fn reversed_values(s: &SeqSpec, count: usize) -> Result<Vec<Rational>> {
    Ok(inverse_binomial_transform(&s.values(count)?))
}

/// `beta_n = sum_k C(n,k) alpha_k`.
pub fn binomial_transform(alpha: &[Rational]) -> Vec<Rational> {
    (0..alpha.len())
        .map(|n| {
            (0..=n).fold(Rational::zero(), |acc, k| acc + binom_q(n as i64, k as i64) * &alpha[k])
        })
        .collect()
}

/// `alpha_n = sum_k C(n,k) (-1)^{n-k} beta_k`.
pub fn inverse_binomial_transform(beta: &[Rational]) -> Vec<Rational> {
    (0..beta.len())
        .map(|n| {
            (0..=n).fold(Rational::zero(), |acc, k| {
                acc + rational::sign_pow((n - k) as i64) * binom_q(n as i64, k as i64) * &beta[k]
            })
        })
        .collect()
}

/// `sum_{k<=K} g_k^*(-1)/k! x^k D^k`, which acts on `x^n` as `gamma_n`.
pub fn classical_diag_op(s: &SeqSpec, order: usize) -> Result<DiffOp> {
    let gstar = reversed_values(s, order + 1)?;
    DiffOp::from_terms(
        order,
        gstar
            .iter()
            .enumerate()
            .map(|(k, g)| (k, Poly::monomial(g / factorial_q(k as u64), k))),
    )
}

/// Upper bound on the degree of `f = sum_k g_k^*(-1) x^k` when `f` is a
/// polynomial, `None` when it is not (or cannot be known from the spec).
pub fn gstar_degree_bound(s: &SeqSpec) -> Option<usize> {
    match s {
        SeqSpec::PolyInN(p) => Some(p.degree().unwrap_or(0)),
        SeqSpec::AltPolyInN(p) if p.is_zero() => Some(0),
        SeqSpec::AltPolyInN(_) => None,
        SeqSpec::Geometric(r) if r.is_one() => Some(0),
        SeqSpec::Geometric(_) => None,
        SeqSpec::ApproxPow { exponent, .. } => exact_pow_exponent(exponent).map(|k| k as usize),
        SeqSpec::ExplicitList(_) => None,
    }
}

/// The generating polynomial `f(x) = sum_k g_k^*(-1) x^k`.
pub fn gstar_polynomial(s: &SeqSpec) -> Result<Poly> {
    let bound = gstar_degree_bound(s).ok_or_else(|| {
        Error::NonPolynomial(format!(
            "sum g_k^*(-1) x^k is not a polynomial for `{s}`{}",
            match s {
                SeqSpec::ExplicitList(_) => " (a finite prefix does not determine it)",
                _ => "",
            }
        ))
    })?;
    Ok(Poly::from_coeffs(reversed_values(s, bound + 1)?))
}

/// True when `f` has one-signed coefficients (zeros allowed).
pub fn same_sign_coeffs(p: &Poly) -> bool {
    let pos = p.coeffs().iter().any(|c| c.is_positive());
    let neg = p.coeffs().iter().any(|c| c.is_negative());
    !(pos && neg)
}
