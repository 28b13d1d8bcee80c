//! Closed forms for Hermite diagonal operators `T[H_n] = gamma_n H_n`.
//!
//! The formulas below are stated for the unshifted basis `H_n(x)`; shifted
//! bases go through [`peetre_expand`] only.

use num_traits::Zero;

use crate::bases::{basis_poly, hermite_imag, Basis, BasisKind};
use crate::error::{Error, Result};
use crate::jensen::inverse_binomial_transform;
use crate::peetre::{peetre_expand, DiffOp};
use crate::poly::Poly;
use crate::rational::{self, binom_q, factorial_q, frac, int, Rational};
use crate::seq::SeqSpec;
use crate::series::{TruncSeries, Weight};

/// How to compute `Q_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HermiteMethod {
    Recursion,
    Forgacs,
    Sum,
    Complex,
}

impl std::str::FromStr for HermiteMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recursion" => Ok(HermiteMethod::Recursion),
            "forgacs" => Ok(HermiteMethod::Forgacs),
            "sum" => Ok(HermiteMethod::Sum),
            "complex" => Ok(HermiteMethod::Complex),
            other => Err(Error::InvalidArgument(format!("unknown Hermite method `{other}`"))),
        }
    }
}

fn hermite(n: usize) -> Poly {
    basis_poly(&Basis::hermite(), n)
}

fn pow2(e: usize) -> Rational {
    rational::pow(&int(2), e as u32)
}

/// Rejects anything but the plain Hermite basis.
pub fn require_unshifted_hermite(b: &Basis) -> Result<()> {
    if b.kind != BasisKind::Hermite || !b.is_unshifted() {
        return Err(Error::UnsupportedBasis(format!(
            "{b}: closed-form Hermite formulas need the unshifted Hermite basis"
        )));
    }
    Ok(())
}

/// `Q_k` by the chosen method. Closed forms reject shifted bases.
pub fn hermite_qk(method: HermiteMethod, b: &Basis, s: &SeqSpec, k: usize) -> Result<Poly> {
    if method != HermiteMethod::Recursion {
        require_unshifted_hermite(b)?;
    }
    match method {
        HermiteMethod::Recursion => {
            if b.kind != BasisKind::Hermite {
                return Err(Error::UnsupportedBasis(format!("{b} is not a Hermite basis")));
            }
            Ok(peetre_expand(b, s, k)?.term(k))
        }
        HermiteMethod::Forgacs => hermite_qk_forgacs(s, k),
        HermiteMethod::Sum => hermite_qk_sum(s, k),
        HermiteMethod::Complex => hermite_qk_complex(s, k),
    }
}

/// `Q_k = sum_j (-1)^j / (j! (k-2j)! 2^{k-j}) g_{k-j}^*(-1) H_{k-2j}`.
pub fn hermite_qk_forgacs(s: &SeqSpec, k: usize) -> Result<Poly> {
    Ok(forgacs_from_values(&s.values(k + 1)?, k))
}

fn forgacs_from_values(gammas: &[Rational], k: usize) -> Poly {
    let g = inverse_binomial_transform(&gammas[..=k]);
    let mut out = Poly::zero();
    for j in 0..=k / 2 {
        let w = rational::sign_pow(j as i64)
            / (factorial_q(j as u64) * factorial_q((k - 2 * j) as u64) * pow2(k - j));
        let c = w * &g[k - j];
        if !c.is_zero() {
            out = &out + &hermite(k - 2 * j).scale(&c);
        }
    }
    out
}

/// `Q_m = sum_k (-1)^k/(k! 2^k) (sum_j C(k,j) g_{m-k+j}^*(-1)/2^j) x^{m-2k}/(m-2k)!`.
pub fn hermite_qk_sum(s: &SeqSpec, m: usize) -> Result<Poly> {
    let g = inverse_binomial_transform(&s.values(m + 1)?);
    let mut coeffs = vec![Rational::zero(); m + 1];
    for k in 0..=m / 2 {
        let inner = (0..=k).fold(Rational::zero(), |acc, j| {
            acc + binom_q(k as i64, j as i64) * &g[m - k + j] / pow2(j)
        });
        coeffs[m - 2 * k] = rational::sign_pow(k as i64) * inner
            / (factorial_q(k as u64) * pow2(k) * factorial_q((m - 2 * k) as u64));
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// `Q_n = 1/(n! 2^n) sum_k C(n,k) gamma_k i^{n-k} H_{n-k}(ix) H_k(x)`.
pub fn hermite_qk_complex(s: &SeqSpec, n: usize) -> Result<Poly> {
    let gammas = s.values(n + 1)?;
    let mut out = Poly::zero();
    for (k, g) in gammas.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let c = binom_q(n as i64, k as i64) * g;
        out = &out + &(&hermite_imag(n - k) * &hermite(k)).scale(&c);
    }
    Ok(out.scale(&(factorial_q(n as u64) * pow2(n)).recip()))
}

/// Row `2n` of the decomposition of a Hermite diagonal operator:
/// `b_{2n,m} = sum_k C(m,k) (-1)^n/(n! 2^n) sum_j C(n,j) g_{k+n+j}^*(-1)/2^j`.
/// Odd rows vanish identically.
pub fn hermite_bnk(s: &SeqSpec, n: usize, m: usize) -> Result<Rational> {
    Ok(bnk_from_values(&s.values(m + 2 * n + 1)?, n, m))
}

fn bnk_from_values(gammas: &[Rational], n: usize, m: usize) -> Rational {
    let g = inverse_binomial_transform(&gammas[..=m + 2 * n]);
    let pre = rational::sign_pow(n as i64) / (factorial_q(n as u64) * pow2(n));
    let mut total = Rational::zero();
    for k in 0..=m {
        let inner = (0..=n).fold(Rational::zero(), |acc, j| {
            acc + binom_q(n as i64, j as i64) * &g[k + n + j] / pow2(j)
        });
        total += binom_q(m as i64, k as i64) * inner;
    }
    total * pre
}

/// `b_{2n,m}` together with a bound on its error when `s` is approximate.
pub fn hermite_bnk_with_error(s: &SeqSpec, n: usize, m: usize) -> Result<(Rational, Rational)> {
    let len = m + 2 * n + 1;
    let value = bnk_from_values(&s.values(len)?, n, m);
    let eps = s.error_bound();
    if eps.is_zero() {
        return Ok((value, eps));
    }
    Ok((value, linear_error_bound(len, &eps, |v| bnk_from_values(v, n, m))))
}

/// `eps * sum_k |w_k|` for a linear functional `f(gamma) = sum_k w_k gamma_k`.
pub(crate) fn linear_error_bound(len: usize, eps: &Rational, f: impl Fn(&[Rational]) -> Rational) -> Rational {
    let mut unit = vec![Rational::zero(); len];
    let mut total = Rational::zero();
    for k in 0..len {
        unit[k] = int(1);
        total += rational::abs(&f(&unit));
        unit[k] = Rational::zero();
    }
    total * eps
}

/// `h_0 = e^{-x} sum gamma_k x^k/k!` at order `N`.
pub fn hermite_h0(s: &SeqSpec, order: usize) -> Result<TruncSeries> {
    Ok(TruncSeries::from_sequence(s, Weight::Taylor, order)?.exp_mul(&int(-1)))
}

fn hn_from_h0(h0: TruncSeries, n: usize) -> Result<TruncSeries> {
    let mut h = h0;
    for i in 1..=n {
        let inner = h.exp_mul(&int(2)).derive()?;
        h = inner.exp_mul(&int(-2)).derive()?.scale(&frac(-1, 4 * i as i64));
    }
    Ok(h)
}

/// `h_n = -1/(4n) D e^{-2x} D e^{2x} h_{n-1}`, returned at order `N - 2n`.
/// The result is recomputed at order `N + 8` and compared as a guard.
pub fn hermite_hn(s: &SeqSpec, n: usize, order: usize) -> Result<TruncSeries> {
    if order < 2 * n {
        return Err(Error::OrderOverflow(format!(
            "h_{n} needs series order at least {}, got {order}",
            2 * n
        )));
    }
    let h = hn_from_h0(hermite_h0(s, order)?, n)?;
    let wide = hn_from_h0(hermite_h0(s, order + 8)?, n)?;
    if wide.truncate(h.order()) != h {
        return Err(Error::InvalidArgument(format!("h_{n} is unstable under truncation at order {order}")));
    }
    Ok(h)
}

/// Given the `Q_k` of `T[H_n] = gamma_n H_n`, returns those of the operator
/// with eigenvalues `(-1)^n gamma_n`:
/// `Q~_n = (-2)^n/n! sum_k Q_k/2^k D^k x^n`. The map is an involution.
pub fn hermite_alternate(op: &DiffOp) -> DiffOp {
    let order = op.order();
    let mut out = DiffOp::zero(order);
    for n in 0..=order {
        let mut acc = Poly::zero();
        for (k, q) in op.terms().range(..=n) {
            let c = rational::big(rational::falling(n as u64, *k as u64)) / pow2(*k);
            acc = &acc + &(q * &Poly::monomial(c, n - k));
        }
        let scale = rational::pow(&int(-2), n as u32) / factorial_q(n as u64);
        out.set(n, acc.scale(&scale));
    }
    out
}

/// `(e^{-x}(f' - f), e^{-x}(f' + f))` with `f = sum gamma_k x^k/k!`, at
/// order `N - 1`.
pub fn hermite_edge_series(s: &SeqSpec, order: usize) -> Result<(TruncSeries, TruncSeries)> {
    let f = TruncSeries::from_sequence(s, Weight::Taylor, order)?;
    let df = f.derive()?;
    let minus = df.sub(&f).exp_mul(&int(-1));
    let plus = df.add(&f).exp_mul(&int(-1));
    Ok((minus, plus))
}
