//! Independent oracles checked against the library.

#![allow(clippy::needless_range_loop)]

mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use hypercore::bases::{basis_poly, hermite_imag, Basis};
use hypercore::classify::{classical_check_values, mscomb_derive, MscombKind, Status};
use hypercore::jensen::{jensen_poly, reversed_values};
use hypercore::laguerre::{identity_horrible, laguerre_bnm};
use hypercore::peetre::{apply_op, compose_ops, DiffOp};
use hypercore::rational::{frac, int};
use hypercore::{Poly, Rational, SeqSpec};

#[test]
fn hyperbolicity_matches_discriminant_oracle() {
    let (checked, bad) = common::hyperbolicity_sweep();
    assert_eq!(checked, 7usize.pow(5) - 1);
    assert!(bad.is_empty(), "{bad:?}");
}

// ---------------------------------------------------------------------------
// i^m H_m(ix) through Gaussian rationals.

#[derive(Clone)]
struct Gauss(Rational, Rational);

impl Gauss {
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 - &o.0, &self.1 - &o.1)
    }
    fn scale(&self, c: &Rational) -> Gauss {
        Gauss(&self.0 * c, &self.1 * c)
    }
}

fn hermite_at(m: usize, z: &Gauss) -> Gauss {
    // H_0 = 1, H_1 = 2z, H_{n+1} = 2z H_n - 2n H_{n-1}
    let mut prev = Gauss(int(1), int(0));
    if m == 0 {
        return prev;
    }
    let mut cur = z.scale(&int(2));
    for n in 1..m {
        let next = z.mul(&cur).scale(&int(2)).sub(&prev.scale(&int(2 * n as i64)));
        prev = cur;
        cur = next;
    }
    cur
}

#[test]
fn hermite_imag_matches_complex_evaluation() {
    let i = Gauss(int(0), int(1));
    for m in 0..=10 {
        let mut im = Gauss(int(1), int(0));
        for _ in 0..m {
            im = im.mul(&i);
        }
        for x in 1..=3 {
            let z = Gauss(int(0), int(x));
            let v = im.mul(&hermite_at(m, &z));
            assert!(v.1.is_zero());
            assert_eq!(hermite_imag(m).eval(&int(x)), v.0, "m={m} x={x}");
        }
    }
}

// ---------------------------------------------------------------------------
// Closed forms.

fn binom_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for a in 0..=n {
        t[a][0] = BigInt::one();
        for b in 1..=a {
            t[a][b] = &t[a - 1][b - 1] + &t[a - 1][b];
        }
    }
    t
}

#[test]
fn horrible_identity_with_pascal_triangle() {
    let t = binom_table(40);
    let c = |a: i64, b: i64| -> BigInt {
        if a < 0 || b < 0 || b > a {
            BigInt::zero()
        } else {
            t[a as usize][b as usize].clone()
        }
    };
    let mut cases = 0;
    for n in 0..=12i64 {
        for m in 0..=12i64 {
            for p in 0..=12i64 {
                let mut lhs = BigInt::zero();
                for k in 0..=n {
                    for j in 0..=m {
                        lhs += c(m, j) * c(k - j, p - j) * c(p, k - j) * c(n + 1, k + m - j);
                    }
                }
                let rhs = c(n + 1, p) * c(n + 1, m) - c(n + 1 - m, p - m) * c(p, n + 1 - m);
                assert_eq!(lhs, rhs);
                assert_eq!(identity_horrible(n, m, p), (lhs, rhs));
                cases += 1;
            }
        }
    }
    assert_eq!(cases, 13 * 13 * 13);
}

#[test]
fn jensen_of_k_is_nx_times_power() {
    let t = binom_table(20);
    for n in 1..=12usize {
        // n x (1+x)^{n-1} expanded with Pascal coefficients
        let want: Vec<Rational> = (0..=n)
            .map(|k| if k == 0 { int(0) } else { Rational::from(BigInt::from(n) * &t[n - 1][k - 1]) })
            .collect();
        assert_eq!(jensen_poly(&SeqSpec::poly("n").unwrap(), n).unwrap(), Poly::from_coeffs(want));
    }
}

#[test]
fn jensen_of_quadratic_has_real_zeros() {
    let s = SeqSpec::poly("n^2+n+1").unwrap();
    // gamma_k/k! are the Taylor coefficients of e^x (x+1)^2
    let vals = s.values(12).unwrap();
    for (k, g) in vals.iter().enumerate() {
        let fact: Rational = (1..=k as i64).fold(int(1), |a, i| a * int(i));
        let from_closed = if k == 0 { int(1) } else { int(1) + int(2 * k as i64) + int((k * (k - 1)) as i64) };
        assert_eq!(g, &from_closed);
        assert_eq!(from_closed / fact.clone(), g / fact);
    }
    for n in 2..=10i64 {
        // g_n = (1+x)^{n-2} ((n^2+n+1) x^2 + 2(n+1) x + 1), discriminant 4n
        let quad = Poly::from_ints(&[1, 2 * (n + 1), n * n + n + 1]);
        let want = &Poly::from_ints(&[1, 1]).pow((n - 2) as u32) * &quad;
        assert_eq!(jensen_poly(&s, n as usize).unwrap(), want);
        assert!(4 * (n + 1) * (n + 1) - 4 * (n * n + n + 1) >= 0);
    }
    assert_eq!(
        hypercore::classify::classical_ms_check(&s, 10).unwrap().status,
        Status::PassToOrder(10)
    );
}

#[test]
fn first_derived_sequence_closed_form() {
    // sum_k C(n,k) gamma_{1+k} with gamma_k = k^2+k+1 equals 2^{n-2}(n+3)(n+4)
    let got = mscomb_derive(&SeqSpec::poly("n^2+n+1").unwrap(), 1, MscombKind::First, 10).unwrap();
    for (n, v) in got.iter().enumerate() {
        let n = n as i64;
        assert_eq!(*v, frac((n + 3) * (n + 4), 4) * int(1 << n));
    }
    assert_eq!(classical_check_values(&got, &int(0)).status, Status::PassToOrder(10));
}

#[test]
fn laguerre_definition_sum() {
    // L_n = sum_k C(n,k) (-1)^k x^k / k!
    let t = binom_table(12);
    for n in 0..=12usize {
        let mut fact = int(1);
        let mut coeffs = Vec::new();
        for k in 0..=n {
            if k > 0 {
                fact *= int(k as i64);
            }
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            coeffs.push(Rational::from(t[n][k].clone()) * sign / &fact);
        }
        assert_eq!(basis_poly(&Basis::laguerre(), n), Poly::from_coeffs(coeffs));
    }
}

#[test]
fn hermite_four_second_derivative() {
    let h4 = Poly::from_ints(&[12, 0, -48, 0, 16]);
    assert_eq!(basis_poly(&Basis::hermite(), 4), h4);
    // (16x^4 - 48x^2 + 12)'' = 192x^2 - 96
    assert_eq!(h4.derive().derive().eval(&int(0)), int(-96));
    assert_eq!(hypercore::bases::deriv_at_zero(&Basis::hermite(), 4, 2).unwrap(), int(-96));
}

#[test]
fn hermite_expansion_of_square() {
    // 4 c_2 = 1, -2 c_2 + c_0 = 0
    let c2 = frac(1, 4);
    let c0 = &c2 * int(2);
    assert_eq!(
        hypercore::bases::expand_in_basis(&Poly::monomial(int(1), 2), &Basis::hermite()),
        vec![c0, int(0), c2]
    );
}

#[test]
fn reversed_jensen_by_evaluation() {
    for text in ["poly:n", "poly:n+2", "poly:1", "poly:n^3-2n", "geom:1/3"] {
        let s: SeqSpec = text.parse().unwrap();
        let vals = s.values(10).unwrap();
        let got = reversed_values(&s, 10).unwrap();
        for n in 0..10usize {
            // g_n^*(x) = sum_k C(n,k) gamma_k x^{n-k}, evaluated at -1
            let t = binom_table(n);
            let coeffs: Vec<Rational> =
                (0..=n).map(|j| Rational::from(t[n][n - j].clone()) * &vals[n - j]).collect();
            assert_eq!(Poly::from_coeffs(coeffs).eval(&int(-1)), got[n], "{text} n={n}");
        }
    }
}

#[test]
fn finite_differences_annihilate_polynomials() {
    for d in 0..=6usize {
        let text = format!("poly:n^{d} + 3n + 1");
        let s: SeqSpec = text.parse().unwrap();
        let deg = d.max(1);
        let g = reversed_values(&s, deg + 7).unwrap();
        for (n, v) in g.iter().enumerate().skip(deg + 1) {
            assert!(v.is_zero(), "{text} n={n}");
        }
        for n in deg + 1..=deg + 3 {
            for m in 0..5 {
                assert!(laguerre_bnm(&s, n, m).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn composition_by_application() {
    let xd = DiffOp::from_terms(6, [(1, Poly::x())]).unwrap();
    let sq = compose_ops(&xd, &xd);
    for n in 0..=4usize {
        let xn = Poly::monomial(int(1), n);
        let twice = apply_op(&xd, &apply_op(&xd, &xn).unwrap()).unwrap();
        assert_eq!(apply_op(&sq, &xn).unwrap(), twice);
        assert_eq!(twice, xn.scale(&int((n * n) as i64)));
    }
}
