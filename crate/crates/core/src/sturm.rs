//! Exact real-root counting by Sturm sequences, square-free
//! decomposition, and the hyperbolicity tests built on them.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// An interval endpoint for [`sturm_count`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl From<Rational> for Bound {
    fn from(r: Rational) -> Self {
        Bound::Finite(r)
    }
}

fn sign(r: &Rational) -> i8 {
    match r.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn sign_at(p: &Poly, at: &Bound) -> i8 {
    let lc = match p.leading() {
        Some(lc) => sign(lc),
        None => return 0,
    };
    match at {
        Bound::Finite(x) => sign(&p.eval(x)),
        Bound::PosInf => lc,
        Bound::NegInf => {
            if p.degree().unwrap_or(0).is_multiple_of(2) {
                lc
            } else {
                -lc
            }
        }
    }
}

/// Square-free part `p / gcd(p, p')`, made monic.
pub fn square_free_part(p: &Poly) -> Poly {
    let g = Poly::gcd(p, &p.derive());
    p.div_rem(&g).0.monic()
}

/// Sturm chain `p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i)`.
pub fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone()];
    let mut next = p.derive();
    while !next.is_zero() {
        let prev = chain.last().unwrap().clone();
        let rem = prev.div_rem(&next).1;
        chain.push(next);
        // Positive rescaling keeps the sign pattern and the numbers small.
        next = match rem.leading() {
            Some(lc) => rem.scale(&(-lc.abs().recip())),
            None => rem,
        };
    }
    chain
}

fn variations(chain: &[Poly], at: &Bound) -> usize {
    let signs: Vec<i8> = chain.iter().map(|q| sign_at(q, at)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn sturm_count(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ordered = match (lo, hi) {
        (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        (Bound::Finite(a), Bound::Finite(b)) => a < b,
        _ => true,
    };
    if !ordered || p.is_constant() {
        return Ok(0);
    }
    let chain = sturm_chain(&square_free_part(p));
    Ok(variations(&chain, lo).saturating_sub(variations(&chain, hi)))
}

/// Yun's square-free factorisation: returns `[s1, s2, ...]` with
/// `p = c * s1 * s2^2 * s3^3 ...`, each `s_i` monic and square-free.
pub fn square_free_decomposition(p: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let dp = p.derive();
    let a0 = Poly::gcd(p, &dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derive();
    loop {
        let a = Poly::gcd(&b, &d);
        out.push(a.monic());
        b = b.div_rem(&a).0;
        if b.is_constant() {
            break;
        }
        c = d.div_rem(&a).0;
        d = &c - &b.derive();
    }
    while out.last().is_some_and(Poly::is_constant) {
        out.pop();
    }
    out
}

/// True iff every complex root of `p` is real, counted with multiplicity.
/// Nonzero constants are hyperbolic; the zero polynomial is rejected.
pub fn is_hyperbolic(p: &Poly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for factor in square_free_decomposition(p) {
        let deg = factor.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        if sturm_count(&factor, &Bound::NegInf, &Bound::PosInf)? != deg {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff all roots of `p` are real and lie in `[lo, hi]`.
pub fn roots_in_closed_interval(p: &Poly, lo: &Rational, hi: &Rational) -> Result<bool> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
    }
    if !is_hyperbolic(p)? {
        return Ok(false);
    }
    let below_or_at = sturm_count(p, &Bound::NegInf, &Bound::Finite(lo.clone()))?;
    let at_lo = usize::from(p.eval(lo).is_zero());
    let above = sturm_count(p, &Bound::Finite(hi.clone()), &Bound::PosInf)?;
    Ok(below_or_at - at_lo == 0 && above == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn fin(r: Rational) -> Bound {
        Bound::Finite(r)
    }

    #[test]
    fn counts_distinct_roots_half_open() {
        let p = Poly::from_roots(int(1), &[int(0), int(-1), int(1)]);
        assert_eq!(sturm_count(&p, &fin(int(-2)), &fin(int(2))).unwrap(), 3);
        let q = Poly::from_ints(&[2, 1]);
        assert_eq!(sturm_count(&q, &fin(int(-1)), &fin(int(0))).unwrap(), 0);
        let r = Poly::from_roots(int(1), &[int(0), frac(-1, 2)]);
        assert_eq!(sturm_count(&r, &fin(int(-1)), &fin(int(0))).unwrap(), 2);
        // Left endpoint excluded, right included.
        assert_eq!(sturm_count(&r, &fin(int(0)), &fin(int(1))).unwrap(), 0);
        assert_eq!(sturm_count(&r, &fin(int(-1)), &fin(frac(-1, 2))).unwrap(), 1);
    }

    #[test]
    fn multiplicities_counted_once() {
        let p = Poly::from_roots(int(3), &[int(1), int(1), int(1), int(-2)]);
        assert_eq!(sturm_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap(), 2);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(sturm_count(&Poly::zero(), &Bound::NegInf, &Bound::PosInf), Err(Error::ZeroPolynomial));
        assert_eq!(is_hyperbolic(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn hyperbolicity() {
        assert!(is_hyperbolic(&Poly::from_ints(&[-1, 0, 1])).unwrap());
        // -x^8 - 3x^6 = -x^6 (x^2 + 3)
        let mut c = vec![0; 9];
        c[8] = -1;
        c[6] = -3;
        assert!(!is_hyperbolic(&Poly::from_ints(&c)).unwrap());
        assert!(!is_hyperbolic(&Poly::from_ints(&[-1, 0, -4])).unwrap());
        assert!(is_hyperbolic(&Poly::from_ints(&[7])).unwrap());
        // (x^2+1)^2 x has one distinct real root but four non-real ones.
        let p = &Poly::from_ints(&[1, 0, 1]).pow(2) * &Poly::x();
        assert!(!is_hyperbolic(&p).unwrap());
    }

    #[test]
    fn closed_interval() {
        let lo = int(-1);
        let hi = int(0);
        assert!(roots_in_closed_interval(&Poly::from_ints(&[0, 1, 1]), &lo, &hi).unwrap());
        assert!(!roots_in_closed_interval(&Poly::from_ints(&[2, 1]), &lo, &hi).unwrap());
        assert!(roots_in_closed_interval(&Poly::from_ints(&[0, 0, 1]), &lo, &hi).unwrap());
        assert!(roots_in_closed_interval(&Poly::from_ints(&[1, 1]), &lo, &hi).unwrap());
        assert!(!roots_in_closed_interval(&Poly::from_ints(&[1, 0, 1]), &lo, &hi).unwrap());
        assert!(roots_in_closed_interval(&Poly::from_ints(&[1, 1]), &hi, &lo).is_err());
    }

    #[test]
    fn yun_decomposition() {
        let p = &(&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[2, 1]).pow(2)) * &Poly::from_ints(&[1, 0, 1]).pow(3);
        let parts = square_free_decomposition(&p);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], Poly::from_ints(&[-1, 1]));
        assert_eq!(parts[1], Poly::from_ints(&[2, 1]));
        assert_eq!(parts[2], Poly::from_ints(&[1, 0, 1]));
    }
}
