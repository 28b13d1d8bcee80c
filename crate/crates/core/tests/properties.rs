//! Property suites over the exact kernels and the operator theory.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use hypercore::bases::{basis_poly, combine_in_basis, deriv_at_zero, expand_in_basis, Basis, BasisKind};
use hypercore::classify::{
    classical_check_values, classical_ms_check, hermite_ms_check, hermite_ms_check_values, hp_falsify,
    laguerre_check_generating, laguerre_ms_check, mscomb_derive, quad_op_hp_check, quad_parts, standard_corpus,
    MscombKind, Status,
};
use hypercore::decompose::{decompose, reconstruct, tn_eigenvalues, tn_operator_terms};
use hypercore::fixtures::{all_fixtures, fixture_operator, Check};
use hypercore::hermite::{hermite_bnk, hermite_qk_complex, hermite_qk_forgacs, hermite_qk_sum};
use hypercore::jensen::{binomial_transform, classical_diag_op, inverse_binomial_transform, reversed_values, same_sign_coeffs};
use hypercore::laguerre::{laguerre_bnm, laguerre_hn, laguerre_qk_basis, laguerre_qk_jensen};
use hypercore::peetre::{apply_op, compose_ops, peetre_expand, peetre_from_action, DiffOp};
use hypercore::rational::{binom_q, factorial_q, frac, int, pow};
use hypercore::sturm::{is_hyperbolic, roots_in_closed_interval, sturm_count, Bound};
use hypercore::series::{TruncSeries, Weight};
use hypercore::{Poly, Rational, SeqSpec};

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 0..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
}

fn seq(text: &str) -> SeqSpec {
    text.parse().unwrap()
}

fn all_bases() -> Vec<Basis> {
    vec![
        Basis::monomial(),
        Basis::hermite(),
        Basis::laguerre(),
        Basis::legendre(),
        Basis::shifted(BasisKind::Hermite, int(3)),
        Basis::shifted(BasisKind::Laguerre, int(-1)),
        Basis::with_affine(BasisKind::Legendre, frac(1, 2), frac(1, 3)).unwrap(),
    ]
}

fn fixture_sequences() -> Vec<SeqSpec> {
    ["poly:n", "poly:n^2+n+1", "poly:n+2", "poly:n^2", "altpoly:n", "geom:1/2", "poly:1"]
        .iter()
        .map(|t| seq(t))
        .collect()
}

fn hermite_ms_fixtures() -> Vec<SeqSpec> {
    let mut out = vec![seq("poly:n"), seq("poly:n^2+n+1")];
    for base in ["poly:n", "poly:n^2+n+1"] {
        for which in [MscombKind::First, MscombKind::Second] {
            out.push(SeqSpec::ExplicitList(mscomb_derive(&seq(base), 1, which, 30).unwrap()));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Polynomials and real roots.

proptest! {
    #[test]
    fn sturm_count_is_additive(
        rp in prop::collection::vec(-8i64..=8, 1..4),
        rq in prop::collection::vec(-8i64..=8, 1..4),
        a in -10i64..=0,
        b in 0i64..=10,
    ) {
        // p has roots k/2, q has roots k/3 shifted off the halves
        let p = Poly::from_roots(int(1), &rp.iter().map(|&k| frac(k, 2)).collect::<Vec<_>>());
        let q = Poly::from_roots(int(-2), &rq.iter().map(|&k| frac(6 * k + 1, 6)).collect::<Vec<_>>());
        let lo = Bound::Finite(frac(a, 2));
        let hi = Bound::Finite(frac(b, 2));
        let pq = &p * &q;
        prop_assert_eq!(
            sturm_count(&pq, &lo, &hi).unwrap(),
            sturm_count(&p, &lo, &hi).unwrap() + sturm_count(&q, &lo, &hi).unwrap()
        );
    }

    #[test]
    fn hyperbolicity_of_products(p in small_poly(3), q in small_poly(3)) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let both = is_hyperbolic(&p).unwrap() && is_hyperbolic(&q).unwrap();
        prop_assert_eq!(is_hyperbolic(&(&p * &q)).unwrap(), both);
    }

    #[test]
    fn affine_composition_inverts(p in small_poly(6), alpha in rat(), beta in rat()) {
        prop_assume!(!alpha.is_zero());
        let there = p.compose_affine(&alpha, &beta).unwrap();
        let back = there.compose_affine(&alpha.recip(), &(-&beta / &alpha)).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn polys_are_normalized(c in prop::collection::vec(-2i64..=2, 0..8)) {
        let p = Poly::from_ints(&c);
        match p.coeffs().last() {
            Some(lead) => prop_assert!(!lead.is_zero()),
            None => prop_assert_eq!(p.degree(), None),
        }
    }
}

#[test]
fn zero_polynomial_is_rejected() {
    assert!(is_hyperbolic(&Poly::zero()).is_err());
    assert!(is_hyperbolic(&Poly::constant(int(5))).unwrap());
}

// ---------------------------------------------------------------------------
// Series.

proptest! {
    #[test]
    fn exp_mul_inverts(
        c in prop::collection::vec(rat(), 1..12),
        a in prop::sample::select(vec![frac(1, 1), frac(-1, 1), frac(2, 1), frac(-2, 1), frac(1, 2), frac(-1, 2)]),
    ) {
        let order = c.len() - 1;
        let s = TruncSeries::new(c, order);
        prop_assert_eq!(s.exp_mul(&a).exp_mul(&-a), s);
    }

    #[test]
    fn exp_times_taylor_series_is_binomial_transform(alpha in prop::collection::vec(-20i64..=20, 1..17)) {
        let alpha: Vec<Rational> = alpha.into_iter().map(int).collect();
        let order = alpha.len() - 1;
        let got = TruncSeries::from_values(&alpha, Weight::Taylor, order).exp_mul(&int(1));
        let beta = binomial_transform(&alpha);
        for (n, b) in beta.iter().enumerate() {
            prop_assert_eq!(got.coeff(n), b / factorial_q(n as u64));
        }
    }

    #[test]
    fn binomial_transform_round_trips(v in prop::collection::vec(rat(), 0..=20)) {
        prop_assert_eq!(&inverse_binomial_transform(&binomial_transform(&v)), &v);
        prop_assert_eq!(&binomial_transform(&inverse_binomial_transform(&v)), &v);
    }
}

// ---------------------------------------------------------------------------
// Bases.

#[test]
fn basis_eigen_relations() {
    for n in 0..=12usize {
        let nq = int(n as i64);
        let h = basis_poly(&Basis::hermite(), n);
        let lhs = &h.derive().derive().scale(&frac(-1, 2)) + &(&Poly::x() * &h.derive());
        assert_eq!(lhs, h.scale(&nq));

        let l = basis_poly(&Basis::laguerre(), n);
        let lhs = &(&Poly::from_ints(&[0, -1]) * &l.derive().derive()) + &(&Poly::from_ints(&[-1, 1]) * &l.derive());
        assert_eq!(lhs, l.scale(&nq));

        let p = basis_poly(&Basis::legendre(), n);
        let lhs = &(&Poly::from_ints(&[-1, 0, 1]) * &p.derive().derive()) + &(&Poly::from_ints(&[0, 2]) * &p.derive());
        assert_eq!(lhs, p.scale(&int((n * n + n) as i64)));

        if n > 0 {
            let prev = basis_poly(&Basis::hermite(), n - 1);
            assert_eq!(h.derive(), prev.scale(&int(2 * n as i64)));
        }
    }
}

#[test]
fn basis_degrees_and_derivatives_at_zero() {
    for b in all_bases() {
        for n in 0..=12usize {
            let p = basis_poly(&b, n);
            assert_eq!(p.degree(), Some(n), "{b:?} n={n}");
            for k in 0..=n {
                match deriv_at_zero(&b, n, k) {
                    Ok(v) => assert_eq!(v, p.derive_n(k).eval(&int(0)), "{b:?} n={n} k={k}"),
                    Err(_) => assert!(!b.is_unshifted()),
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn basis_expansion_inverts(
        p in small_poly(10),
        c in prop::collection::vec(rat(), 0..=11),
        which in 0usize..7,
    ) {
        let b = &all_bases()[which];
        prop_assert_eq!(combine_in_basis(&expand_in_basis(&p, b), b), p);
        let mut c = c;
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        prop_assert_eq!(expand_in_basis(&combine_in_basis(&c, b), b), c);
    }
}

#[test]
fn approximate_powers_are_rounded_down() {
    let s = SeqSpec::pow(frac(5, 2));
    let eps = s.error_bound();
    for n in 0..=12i64 {
        let v = s.eval(n as usize).unwrap();
        let n5 = Rational::from(BigInt::from(n).pow(5));
        assert!(&v * &v <= n5);
        let up = &v + &eps;
        assert!(&up * &up > n5);
    }
}

#[test]
fn diagonal_operator_on_monomials() {
    for s in fixture_sequences() {
        let op = classical_diag_op(&s, 12).unwrap();
        for n in 0..=12usize {
            let xn = Poly::monomial(int(1), n);
            assert_eq!(apply_op(&op, &xn).unwrap(), xn.scale(&s.eval(n).unwrap()));
        }
    }
}

// ---------------------------------------------------------------------------
// Peetre expansion.

#[test]
fn peetre_expansion_is_exact_and_unique() {
    let k = 14;
    for b in all_bases() {
        for s in fixture_sequences() {
            let op = peetre_expand(&b, &s, k).unwrap();
            for (idx, q) in op.terms() {
                assert!(q.degree().unwrap_or(0) <= *idx, "{b:?} {s:?} Q_{idx}");
            }
            for n in 0..=k {
                let bn = basis_poly(&b, n);
                assert_eq!(apply_op(&op, &bn).unwrap(), bn.scale(&s.eval(n).unwrap()), "{b:?} {s:?} n={n}");
            }
            let images: Vec<Poly> = (0..=k).map(|n| apply_op(&op, &Poly::monomial(int(1), n)).unwrap()).collect();
            assert_eq!(peetre_from_action(&Basis::monomial(), &images).unwrap(), op);
        }
    }
}

fn cubic_op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(small_poly(3), 4).prop_map(|qs| DiffOp::from_terms(6, qs.into_iter().enumerate()).unwrap())
}

proptest! {
    #[test]
    fn composition_matches_nested_application(a in cubic_op(), b in cubic_op(), p in small_poly(3)) {
        let ab = compose_ops(&a, &b);
        let nested = apply_op(&a, &apply_op(&b, &p).unwrap()).unwrap();
        prop_assert_eq!(apply_op(&ab, &p).unwrap(), nested);
    }
}

// ---------------------------------------------------------------------------
// Decomposition.

fn random_op() -> impl Strategy<Value = DiffOp> {
    (0usize..=10).prop_flat_map(|order| {
        let terms: Vec<_> = (0..=order)
            .map(|k| prop::collection::vec((-4i64..=4, 1i64..=3), 0..=k + 3))
            .collect();
        terms.prop_map(move |qs| {
            let qs = qs
                .into_iter()
                .map(|c| Poly::from_coeffs(c.into_iter().map(|(n, d)| frac(n, d)).collect()));
            DiffOp::from_terms(order, qs.enumerate()).unwrap()
        })
    })
}

fn monomial_count(op: &DiffOp) -> usize {
    op.terms().values().map(|q| q.coeffs().iter().filter(|c| !c.is_zero()).count()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decomposition_round_trips(op in random_op()) {
        let d = decompose(&op);
        prop_assert_eq!(reconstruct(&d).unwrap(), op.clone());
        prop_assert_eq!(decompose(&reconstruct(&d).unwrap()), d.clone());

        // every monomial c x^j of Q_k lands in T_{k-j} and nowhere else
        let mut seen = 0;
        for n in d.entries.keys() {
            let tn = tn_operator_terms(&op, *n);
            for (j, t) in tn.terms() {
                let c = t.coeff(*j);
                prop_assert_eq!(t, &Poly::monomial(c.clone(), *j));
                prop_assert_eq!(op.term((*j as i64 + n) as usize).coeff(*j), c);
                seen += 1;
            }
        }
        prop_assert_eq!(seen, monomial_count(&op));

        if op.terms().iter().all(|(k, q)| q.degree().unwrap_or(0) <= *k) {
            prop_assert!(d.entries.keys().all(|n| *n >= 0));
        }

        let t0 = tn_operator_terms(&op, 0);
        let b0 = tn_eigenvalues(&op, 0, op.order() + 1);
        for (k, b) in b0.iter().enumerate() {
            let xk = Poly::monomial(int(1), k);
            prop_assert_eq!(apply_op(&t0, &xk).unwrap(), xk.scale(b));
        }
    }
}

#[test]
fn hermite_odd_rows_vanish() {
    for s in fixture_sequences().into_iter().chain(hermite_ms_fixtures()) {
        let op = peetre_expand(&Basis::hermite(), &s, 14).unwrap();
        let d = decompose(&op);
        assert!(d.entries.keys().all(|n| n % 2 == 0), "{s:?}");
        for n in (1..=13).step_by(2) {
            assert!(tn_eigenvalues(&op, n, 14 - n as usize + 1).iter().all(Zero::is_zero));
        }
    }
}

// ---------------------------------------------------------------------------
// Hermite closed forms.

#[test]
fn hermite_four_way_agreement() {
    for text in ["poly:n", "poly:n^2+n+1", "altpoly:n", "geom:1/2"] {
        let s = seq(text);
        let op = peetre_expand(&Basis::hermite(), &s, 12).unwrap();
        for k in 0..=12 {
            let q = op.term(k);
            assert_eq!(hermite_qk_forgacs(&s, k).unwrap(), q, "{text} forgacs k={k}");
            assert_eq!(hermite_qk_sum(&s, k).unwrap(), q, "{text} sum k={k}");
            assert_eq!(hermite_qk_complex(&s, k).unwrap(), q, "{text} complex k={k}");
        }
    }
}

#[test]
fn hermite_derivatives_at_zero() {
    for s in fixture_sequences() {
        let op = peetre_expand(&Basis::hermite(), &s, 12).unwrap();
        let g = reversed_values(&s, 13).unwrap();
        for k in 0..=12usize {
            for n in 0..=6usize {
                if k + 2 * n < 12 {
                    assert!(op.term(k + 2 * n + 1).derivative_at_zero(k).is_zero());
                }
                if k + 2 * n <= 12 {
                    let mut sum = Rational::zero();
                    for j in 0..=n {
                        sum += binom_q(n as i64, j as i64) * &g[k + n + j] / pow(&int(2), j as u32);
                    }
                    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                    let want = sign * sum / (factorial_q(n as u64) * pow(&int(2), n as u32));
                    assert_eq!(op.term(k + 2 * n).derivative_at_zero(k), want, "{s:?} k={k} n={n}");
                }
            }
        }
    }
}

#[test]
fn hermite_ms_coefficients_have_real_zeros() {
    for s in hermite_ms_fixtures() {
        let op = peetre_expand(&Basis::hermite(), &s, 10).unwrap();
        for k in 0..=10 {
            let q = op.term(k);
            if !q.is_constant() {
                assert!(is_hyperbolic(&q).unwrap(), "{s:?} Q_{k} = {q}");
            }
        }
        for k in 0..=8 {
            for a in [-2, -1, 1, 2] {
                for b in [-2, -1, 1, 2] {
                    let mix = &op.term(k).scale(&int(a)) + &op.term(k + 1).scale(&int(b));
                    if !mix.is_zero() {
                        assert!(is_hyperbolic(&mix).unwrap(), "{s:?} k={k} {a} {b}");
                    }
                }
            }
        }
    }
}

#[test]
fn hermite_ms_images_of_monomials_have_real_zeros() {
    let op = peetre_expand(&Basis::hermite(), &seq("poly:n^2+n+1"), 10).unwrap();
    for n in 0..=10 {
        let image = apply_op(&op, &Poly::monomial(int(1), n)).unwrap();
        assert!(is_hyperbolic(&image).unwrap(), "n={n}");
    }
}

// ---------------------------------------------------------------------------
// Laguerre closed forms.

#[test]
fn laguerre_three_way_agreement() {
    for text in ["poly:n", "poly:n^2", "poly:n^2+n", "poly:n+2"] {
        let s = seq(text);
        let op = peetre_expand(&Basis::laguerre(), &s, 12).unwrap();
        for k in 0..=12 {
            assert_eq!(laguerre_qk_jensen(&s, k).unwrap(), op.term(k), "{text} jensen k={k}");
            assert_eq!(laguerre_qk_basis(&s, k).unwrap(), op.term(k), "{text} basis k={k}");
        }
    }
}

#[test]
fn laguerre_generating_functions_match_rows() {
    for text in ["poly:n", "poly:n^2", "poly:n^2+n", "poly:n+2", "poly:n^3-n+1"] {
        let s = seq(text);
        for n in 0..=6usize {
            let h = laguerre_hn(&s, n).unwrap();
            let mut coeffs = h.coeffs().to_vec();
            coeffs.resize(10, Rational::zero());
            let row = binomial_transform(&coeffs);
            for (m, b) in row.iter().enumerate() {
                assert_eq!(&laguerre_bnm(&s, n, m).unwrap(), b, "{text} n={n} m={m}");
            }
        }
    }
}

/// `gamma_n = sum_k C(n,k) f_k` as a polynomial in `n`.
fn sequence_from_generating(f: &Poly) -> SeqSpec {
    let mut acc = Poly::zero();
    let mut falling = Poly::one();
    for (k, c) in f.coeffs().iter().enumerate() {
        acc = &acc + &falling.scale(&(c / factorial_q(k as u64)));
        falling = &falling * &Poly::from_coeffs(vec![int(-(k as i64)), int(1)]);
    }
    SeqSpec::PolyInN(acc)
}

proptest! {
    #[test]
    fn laguerre_closure(roots in prop::collection::vec((0i64..=4, 1i64..=4), 1..=4), lead in 1i64..=3) {
        let roots: Vec<Rational> = roots.into_iter().map(|(n, d)| -frac(n.min(d), d)).collect();
        let f = Poly::from_roots(int(lead), &roots);
        let s = sequence_from_generating(&f);
        prop_assert_eq!(reversed_values(&s, f.coeffs().len()).unwrap(), f.coeffs().to_vec());
        prop_assert_eq!(laguerre_ms_check(&s).unwrap().status, Status::PassDecided);
        for n in 0..=6usize {
            let h = laguerre_hn(&s, n).unwrap();
            if h.is_zero() {
                continue;
            }
            prop_assert!(same_sign_coeffs(&h), "h_{} = {}", n, h);
            prop_assert!(roots_in_closed_interval(&h, &int(-1), &int(0)).unwrap(), "h_{} = {}", n, h);
        }
    }
}

// ---------------------------------------------------------------------------
// Classification.

fn classified_sequences() -> Vec<SeqSpec> {
    let mut out = fixture_sequences();
    out.extend(hermite_ms_fixtures());
    out.extend(
        ["altpoly:1-n", "geom:2", "geom:-1/3", "poly:n^3-n+1", "list:1,0,-1/2,-2/3,-5/8", "poly:0"]
            .iter()
            .map(|t| seq(t)),
    );
    out.push(SeqSpec::pow(frac(5, 2)));
    out
}

fn check_order(s: &SeqSpec) -> usize {
    s.len().map_or(12, |l| (l - 1).min(12))
}

#[test]
fn stronger_classes_imply_weaker_ones() {
    for s in classified_sequences() {
        let n = check_order(&s);
        let lag = laguerre_ms_check(&s).unwrap();
        let her = hermite_ms_check(&s, n).unwrap();
        let cla = classical_ms_check(&s, n).unwrap();
        for v in [&lag, &her, &cla] {
            if v.is_fail() {
                assert!(v.witness.is_some(), "{s:?}");
            }
        }
        if lag.is_pass() {
            assert!(her.is_pass() && !her.is_fail(), "{s:?}: {lag} but {her}");
        }
        if her.is_pass() {
            assert!(cla.is_pass(), "{s:?}: {her} but {cla}");
        }
    }
}

#[test]
fn hermite_verdict_ignores_sign_flip() {
    for s in classified_sequences() {
        let n = check_order(&s);
        let vals = s.values(n + 1).unwrap();
        let flipped: Vec<Rational> = vals
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.clone() } else { -g })
            .collect();
        let eps = s.error_bound();
        let a = hermite_ms_check_values(&vals, &eps);
        let b = hermite_ms_check_values(&flipped, &eps);
        assert_eq!(a.status, b.status, "{s:?}");
        if let Some(f) = s.flipped() {
            assert_eq!(hermite_ms_check(&s, n).unwrap().status, hermite_ms_check(&f, n).unwrap().status);
        }
    }
}

#[test]
fn rows_of_multiplier_sequences_are_multiplier_sequences() {
    for s in hermite_ms_fixtures() {
        for n in 0..=4usize {
            let row: Vec<Rational> = (0..=12).map(|m| hermite_bnk(&s, n, m).unwrap()).collect();
            let v = hermite_ms_check_values(&row, &int(0));
            assert!(v.is_pass() || v.status == Status::Trivial, "{s:?} row {}: {v}", 2 * n);
        }
    }
    for text in ["poly:n", "poly:n^2+n", "poly:3n^2+4n+1"] {
        let s = seq(text);
        assert_eq!(laguerre_ms_check(&s).unwrap().status, Status::PassDecided);
        for n in 0..=4usize {
            let h = laguerre_hn(&s, n).unwrap();
            let v = laguerre_check_generating(&h).unwrap();
            assert!(v.is_pass() || v.status == Status::Trivial, "{text} row {n}: {v}");
            let row: Vec<Rational> = (0..=8).map(|m| laguerre_bnm(&s, n, m).unwrap()).collect();
            let c = classical_check_values(&row, &int(0));
            assert!(c.is_pass() || c.status == Status::Trivial, "{text} row {n}: {c} {row:?}");
        }
    }
}

#[test]
fn quadratic_test_agrees_with_falsifier() {
    let corpus = standard_corpus();
    let mut mismatches = Vec::new();
    for f in all_fixtures().unwrap() {
        for c in &f.checks {
            let Check::Quad { op, tn, .. } = c else { continue };
            let target = fixture_operator(&f, op, *tn).unwrap();
            let (q2, q1, q0) = quad_parts(&target).unwrap();
            let verdict = quad_op_hp_check(&q2, &q1, &q0).unwrap();
            // finite explicit operators: run on the whole corpus
            let full = DiffOp::from_terms(8, [(0, q0), (1, q1), (2, q2)]).unwrap();
            let found = hp_falsify(&full, &corpus).unwrap();
            let label = format!("{}:{op}{}", f.id, tn.map(|n| format!("_{n}")).unwrap_or_default());
            match verdict.status {
                Status::Fail if !found.is_fail() => mismatches.push(format!("{label} FAIL but no corpus witness")),
                Status::PassDecided if found.is_fail() => mismatches.push(format!("{label} PASS but {found}")),
                _ => {}
            }
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn turan_formula_in_closed_form() {
    // (x^2 - 1) D^2 + 2x D + 1
    let v = quad_op_hp_check(&Poly::from_ints(&[-1, 0, 1]), &Poly::from_ints(&[0, 2]), &Poly::one()).unwrap();
    assert_eq!(v.status, Status::PassDecided);
    assert_eq!(v.value, Some(int(0)));
}
