//! Test-only oracles shared by several targets.

use num_traits::{Signed, Zero};

use hypercore::rational::{frac, int};
use hypercore::sturm::is_hyperbolic;
use hypercore::{Poly, Rational};

fn horner(c: &[Rational], x: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Synthetic division by `x - r`; `r` must be a root.
fn deflate(c: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = c.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (1..=n).rev() {
        carry = &c[k] + &carry * r;
        out[k - 1] = carry.clone();
    }
    out
}

pub fn oracle_hyperbolic(coeffs: &[i64]) -> bool {
    let mut c: Vec<Rational> = coeffs.iter().map(|&v| int(v)).collect();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    assert!(!c.is_empty());
    // Remove rational roots; candidates come from the original integer coefficients.
    let lead = *coeffs.iter().rev().find(|v| **v != 0).unwrap();
    let low = *coeffs.iter().find(|v| **v != 0).unwrap();
    let mut cands = vec![Rational::zero()];
    for p in divisors(low) {
        for q in divisors(lead) {
            cands.push(frac(p, q));
            cands.push(frac(-p, q));
        }
    }
    'outer: loop {
        if c.len() <= 1 {
            break;
        }
        for r in &cands {
            if horner(&c, r).is_zero() {
                c = deflate(&c, r);
                continue 'outer;
            }
        }
        break;
    }
    match c.len() - 1 {
        0 => true,
        1 => unreachable!("a linear factor has a rational root"),
        2 => {
            let (e, d, a) = (&c[0], &c[1], &c[2]);
            d * d - int(4) * a * e >= Rational::zero()
        }
        3 => {
            let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
            let disc = int(18) * a * b * cc * d - int(4) * b * b * b * d + b * b * cc * cc
                - int(4) * a * cc * cc * cc
                - int(27) * a * a * d * d;
            disc >= Rational::zero()
        }
        4 => quartic_all_real(&c),
        _ => unreachable!(),
    }
}

fn quartic_all_real(c: &[Rational]) -> bool {
    let (e, d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3], &c[4]);
    let i = |v: i64| int(v);
    let disc = i(256) * a * a * a * e * e * e - i(192) * a * a * b * d * e * e - i(128) * a * a * cc * cc * e * e
        + i(144) * a * a * cc * d * d * e
        - i(27) * a * a * d * d * d * d
        + i(144) * a * b * b * cc * e * e
        - i(6) * a * b * b * d * d * e
        - i(80) * a * b * cc * cc * d * e
        + i(18) * a * b * cc * d * d * d
        + i(16) * a * cc * cc * cc * cc * e
        - i(4) * a * cc * cc * cc * d * d
        - i(27) * b * b * b * b * e * e
        + i(18) * b * b * b * cc * d * e
        - i(4) * b * b * b * d * d * d
        - i(4) * b * b * cc * cc * cc * e
        + b * b * cc * cc * d * d;
    let p = i(8) * a * cc - i(3) * b * b;
    let dd = i(64) * a * a * a * e - i(16) * a * a * cc * cc + i(16) * a * b * b * cc - i(16) * a * a * b * d
        - i(3) * b * b * b * b;
    if disc.is_negative() {
        return false;
    }
    if disc.is_positive() {
        return p.is_negative() && dd.is_negative();
    }
    // Without rational roots a repeated root forces a(x^2 + ux + v)^2.
    let u = b / (i(2) * a);
    let v = (cc / a - &u * &u) / i(2);
    assert_eq!(d / a, i(2) * &u * &v, "degenerate quartic is a square");
    assert_eq!(e / a, &v * &v);
    &u * &u - i(4) * &v >= Rational::zero()
}


/// Compares `is_hyperbolic` with the oracle on every nonzero polynomial of
/// degree at most 4 with coefficients in `-3..=3`.
pub fn hyperbolicity_sweep() -> (usize, Vec<Poly>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for code in 0..7i64.pow(5) {
        let coeffs: Vec<i64> = (0..5).map(|i| (code / 7i64.pow(i)) % 7 - 3).collect();
        if coeffs.iter().all(|c| *c == 0) {
            continue;
        }
        let p = Poly::from_ints(&coeffs);
        if is_hyperbolic(&p).unwrap() != oracle_hyperbolic(&coeffs) {
            bad.push(p);
        }
        checked += 1;
    }
    (checked, bad)
}
