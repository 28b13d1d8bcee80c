//! Multiplier-sequence classification, the quadratic-operator test and a
//! brute-force hyperbolicity falsifier.
//!
//! Classical and Hermite verdicts are necessary-condition batteries run to
//! a finite order and are stamped `PASS_TO_ORDER(N)`. The Laguerre and
//! quadratic-operator verdicts are decided.

#![allow(clippy::result_large_err)]

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bases::{basis_poly, Basis};
use crate::error::{Error, Result};
use crate::jensen::{gstar_polynomial, jensen_from_values, same_sign_coeffs};
use crate::peetre::{apply_op, DiffOp};
use crate::poly::Poly;
use crate::rational::{self, binom_q, frac, int, Rational};
use crate::seq::SeqSpec;
use crate::series::{TruncSeries, Weight};
use crate::sturm::{is_hyperbolic, roots_in_closed_interval};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    PassDecided,
    PassToOrder(usize),
    Fail,
    Trivial,
    NotApplicable,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::PassDecided => "PASS_DECIDED",
            Status::PassToOrder(_) => "PASS_TO_ORDER",
            Status::Fail => "FAIL",
            Status::Trivial => "TRIVIAL",
            Status::NotApplicable => "NOT_APPLICABLE",
        }
    }
}

/// Evidence attached to a failing (or informative) verdict.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    /// Which check produced it: `sign`, `jensen`, `turan`, `monotonicity`,
    /// `generating-function`, `alternating`, `tti`, `image`.
    pub check: String,
    pub index: Option<usize>,
    pub input: Option<Poly>,
    pub image: Option<Poly>,
    pub value: Option<Rational>,
    pub detail: String,
}

impl Witness {
    fn new(check: &str, detail: impl Into<String>) -> Self {
        Witness {
            check: check.to_string(),
            detail: detail.into(),
            ..Default::default()
        }
    }

    fn at(mut self, index: usize) -> Self {
        self.index = Some(index);
        self
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 6)?;
        st.serialize_field("check", &self.check)?;
        if let Some(i) = self.index {
            st.serialize_field("index", &i)?;
        }
        if let Some(p) = &self.input {
            st.serialize_field("input", p)?;
        }
        if let Some(p) = &self.image {
            st.serialize_field("image", p)?;
        }
        if let Some(v) = &self.value {
            st.serialize_field("value", &rational::to_canonical(v))?;
        }
        st.serialize_field("detail", &self.detail)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    /// A scalar summary when the check computes one (the Turán value of the
    /// quadratic test).
    pub value: Option<Rational>,
    pub warnings: Vec<String>,
}

impl Verdict {
    fn with(status: Status) -> Self {
        Verdict {
            status,
            witness: None,
            value: None,
            warnings: Vec::new(),
        }
    }

    pub fn pass_to_order(n: usize) -> Self {
        Verdict::with(Status::PassToOrder(n))
    }

    pub fn pass_decided() -> Self {
        Verdict::with(Status::PassDecided)
    }

    pub fn trivial() -> Self {
        Verdict::with(Status::Trivial)
    }

    pub fn not_applicable(reason: impl Into<String>) -> Self {
        let mut v = Verdict::with(Status::NotApplicable);
        v.warnings.push(reason.into());
        v
    }

    pub fn fail(w: Witness) -> Self {
        let mut v = Verdict::with(Status::Fail);
        v.witness = Some(w);
        v
    }

    pub fn is_pass(&self) -> bool {
        matches!(self.status, Status::PassDecided | Status::PassToOrder(_))
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    fn warn(mut self, w: Vec<String>) -> Self {
        self.warnings.extend(w);
        self
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Verdict", 5)?;
        st.serialize_field("status", self.status.name())?;
        if let Status::PassToOrder(n) = self.status {
            st.serialize_field("order", &n)?;
        }
        if let Some(v) = &self.value {
            st.serialize_field("value", &rational::to_canonical(v))?;
        }
        if let Some(w) = &self.witness {
            st.serialize_field("witness", w)?;
        }
        st.serialize_field("warnings", &self.warnings)?;
        st.end()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::PassToOrder(n) => write!(f, "PASS_TO_ORDER({n})")?,
            ref s => f.write_str(s.name())?,
        }
        if let Some(v) = &self.value {
            write!(f, " value={v}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " [{}", w.check)?;
            if let Some(i) = w.index {
                write!(f, " at {i}")?;
            }
            if let Some(p) = &w.input {
                write!(f, " input {p}")?;
            }
            if let Some(p) = &w.image {
                write!(f, " image {p}")?;
            }
            write!(f, ": {}]", w.detail)?;
        }
        for w in &self.warnings {
            write!(f, " (warning: {w})")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Sequence checks

/// Sign of `v` when it is certainly nonzero given the error bound.
fn certain_sign(v: &Rational, eps: &Rational) -> Option<i8> {
    if v.abs() <= *eps {
        None
    } else if v.is_positive() {
        Some(1)
    } else {
        Some(-1)
    }
}

/// All zero except at most two adjacent entries.
pub fn is_trivial_values(vals: &[Rational]) -> bool {
    let nz: Vec<usize> = (0..vals.len()).filter(|&k| !vals[k].is_zero()).collect();
    match nz.as_slice() {
        [] | [_] => true,
        [a, b] => b - a == 1,
        _ => false,
    }
}

/// Whether the whole (infinite) sequence is trivial, when the spec decides it.
pub fn is_trivial_spec(s: &SeqSpec) -> bool {
    match s {
        SeqSpec::ExplicitList(v) => is_trivial_values(v),
        SeqSpec::PolyInN(p) | SeqSpec::AltPolyInN(p) => p.is_zero(),
        SeqSpec::Geometric(r) => r.is_zero(),
        SeqSpec::ApproxPow { .. } => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignPattern {
    OneSign,
    Alternating,
}

/// Nonzero terms must form one block that is one-signed or alternating.
fn sign_pattern(vals: &[Rational], eps: &Rational, warnings: &mut Vec<String>) -> std::result::Result<SignPattern, Witness> {
    let signs: Vec<Option<i8>> = vals.iter().map(|v| certain_sign(v, eps)).collect();
    if !eps.is_zero() {
        let unsure: Vec<usize> = (0..vals.len()).filter(|&k| signs[k].is_none() && !vals[k].is_zero()).collect();
        if !unsure.is_empty() {
            warnings.push(format!("sign undetermined within error bound at indices {unsure:?}"));
        }
    }
    let first = vals.iter().position(|v| !v.is_zero());
    let Some(first) = first else {
        return Ok(SignPattern::OneSign);
    };
    let last = vals.iter().rposition(|v| !v.is_zero()).unwrap();
    if let Some(gap) = (first..=last).find(|&k| vals[k].is_zero()) {
        return Err(Witness::new("sign", "zero term inside the block of nonzero terms").at(gap));
    }
    let mut pattern: Option<SignPattern> = None;
    let mut prev: Option<(usize, i8)> = None;
    for (k, sign) in signs.iter().enumerate().take(last + 1).skip(first) {
        let Some(sk) = *sign else {
            prev = None;
            continue;
        };
        if let Some((j, sj)) = prev {
            if j + 1 == k {
                let here = if sj == sk { SignPattern::OneSign } else { SignPattern::Alternating };
                match pattern {
                    None => pattern = Some(here),
                    Some(p) if p != here => {
                        return Err(Witness::new(
                            "sign",
                            "signs are neither constant nor alternating",
                        )
                        .at(k));
                    }
                    _ => {}
                }
            }
        }
        prev = Some((k, sk));
    }
    Ok(pattern.unwrap_or(SignPattern::OneSign))
}

/// Bound on `|p(x) - p~(x)|` when coefficient `k` is off by at most `deltas[k]`.
fn eval_error(deltas: &[Rational], x: &Rational) -> Rational {
    let ax = x.abs();
    deltas.iter().rev().fold(Rational::zero(), |acc, d| acc * &ax + d)
}

/// Looks for a point where the Laguerre expression
/// `(n-1) p'(x)^2 - n p(x) p''(x)` is negative by more than its error bound.
/// Such a point certifies that `p` (of degree at most `n`) has non-real zeros.
fn laguerre_certificate(p: &Poly, deltas: &[Rational], n: usize) -> Option<Rational> {
    if n < 2 {
        return None;
    }
    let dp = p.derive();
    let ddp = dp.derive();
    let d1: Vec<Rational> = (1..deltas.len()).map(|k| &deltas[k] * int(k as i64)).collect();
    let d2: Vec<Rational> = (1..d1.len()).map(|k| &d1[k] * int(k as i64 + 1)).collect();
    let nn = int(n as i64);
    let n1 = int(n as i64 - 1);
    // Grid over [-6, 2] in steps of 1/20.
    for i in -120..=40i64 {
        let x = frac(i, 20);
        let (v0, v1, v2) = (p.eval(&x), dp.eval(&x), ddp.eval(&x));
        let (e0, e1, e2) = (eval_error(deltas, &x), eval_error(&d1, &x), eval_error(&d2, &x));
        let l = &n1 * &v1 * &v1 - &nn * &v0 * &v2;
        let bound = &n1 * (int(2) * v1.abs() * &e1 + &e1 * &e1)
            + &nn * (v0.abs() * &e2 + v2.abs() * &e0 + &e0 * &e2);
        if l < -bound {
            return Some(x);
        }
    }
    None
}

fn jensen_check(vals: &[Rational], eps: &Rational, order: usize, warnings: &mut Vec<String>) -> std::result::Result<(), Witness> {
    for n in 1..=order {
        let g = jensen_from_values(vals, n).expect("enough values");
        if g.is_zero() {
            continue;
        }
        if is_hyperbolic(&g).expect("nonzero") {
            continue;
        }
        if eps.is_zero() {
            let mut w = Witness::new("jensen", format!("Jensen polynomial g_{n} has non-real zeros")).at(n);
            w.input = Some(g);
            return Err(w);
        }
        let deltas: Vec<Rational> = (0..=n).map(|k| binom_q(n as i64, k as i64) * eps).collect();
        match laguerre_certificate(&g, &deltas, n) {
            Some(x) => {
                let mut w = Witness::new(
                    "jensen",
                    format!(
                        "Jensen polynomial g_{n} has non-real zeros (Laguerre inequality fails at x = {x} beyond the error bound)"
                    ),
                )
                .at(n);
                w.input = Some(g);
                w.value = Some(x);
                return Err(w);
            }
            None => warnings.push(format!(
                "g_{n} of the approximated sequence is not hyperbolic but no certificate beats the error bound"
            )),
        }
    }
    Ok(())
}

fn turan_check(vals: &[Rational], eps: &Rational, order: usize) -> std::result::Result<(), Witness> {
    for n in 1..order.min(vals.len() - 1) {
        let t = &vals[n] * &vals[n] - &vals[n - 1] * &vals[n + 1];
        let bound = if eps.is_zero() {
            Rational::zero()
        } else {
            let m = |v: &Rational| v.abs() * eps;
            int(2) * m(&vals[n]) + m(&vals[n - 1]) + m(&vals[n + 1]) + int(3) * eps * eps
        };
        if t < -bound {
            let mut w = Witness::new("turan", format!("gamma_{n}^2 - gamma_{}gamma_{} < 0", n - 1, n + 1)).at(n);
            w.value = Some(t);
            return Err(w);
        }
    }
    Ok(())
}

fn approx_warnings(eps: &Rational) -> Vec<String> {
    if eps.is_zero() {
        Vec::new()
    } else {
        vec![format!("approximate sequence: each term carries error at most {eps}")]
    }
}

/// The classical battery on explicit values `gamma_0..gamma_N` known to within `eps`.
pub fn classical_check_values(vals: &[Rational], eps: &Rational) -> Verdict {
    let order = vals.len().saturating_sub(1);
    let mut warnings = approx_warnings(eps);
    if is_trivial_values(vals) {
        return Verdict::trivial().warn(warnings);
    }
    let pattern = match sign_pattern(vals, eps, &mut warnings) {
        Ok(p) => p,
        Err(w) => return Verdict::fail(w).warn(warnings),
    };
    if let Err(w) = jensen_check(vals, eps, order, &mut warnings) {
        return Verdict::fail(w).warn(warnings);
    }
    if pattern == SignPattern::OneSign {
        if let Err(w) = turan_check(vals, eps, order) {
            return Verdict::fail(w).warn(warnings);
        }
    }
    Verdict::pass_to_order(order).warn(warnings)
}

/// Necessary conditions for a classical multiplier sequence, to order `N`.
pub fn classical_ms_check(s: &SeqSpec, order: usize) -> Result<Verdict> {
    let vals = s.values(order + 1)?;
    if is_trivial_spec(s) {
        return Ok(Verdict::trivial());
    }
    Ok(classical_check_values(&vals, &s.error_bound()))
}

/// The Hermite battery on explicit values known to within `eps`.
pub fn hermite_ms_check_values(vals: &[Rational], eps: &Rational) -> Verdict {
    let order = vals.len().saturating_sub(1);
    if is_trivial_values(vals) {
        return Verdict::trivial().warn(approx_warnings(eps));
    }
    let pattern = match sign_pattern(vals, eps, &mut Vec::new()) {
        Ok(p) => p,
        Err(w) => return Verdict::fail(w).warn(approx_warnings(eps)),
    };
    let mut notes = Vec::new();
    // The alternating case runs the one-sign battery on (-1)^k gamma_k.
    let working: Vec<Rational> = match pattern {
        SignPattern::OneSign => vals.to_vec(),
        SignPattern::Alternating => {
            notes.push("alternating sequence: checked through its sign-flipped counterpart".to_string());
            vals.iter()
                .enumerate()
                .map(|(k, v)| rational::sign_pow(k as i64) * v)
                .collect()
        }
    };
    let classical = classical_check_values(&working, eps);
    if !classical.is_pass() {
        return classical.warn(notes);
    }
    let mut warnings = classical.warnings;
    warnings.extend(notes);
    for k in 0..order {
        let gap = vals[k + 1].abs() - vals[k].abs();
        if gap < -(int(2) * eps) {
            let mut w = Witness::new(
                "monotonicity",
                format!("|gamma_{k}| > |gamma_{}|", k + 1),
            )
            .at(k);
            w.value = Some(gap);
            return Verdict::fail(w).warn(warnings);
        }
    }
    Verdict::pass_to_order(order).warn(warnings)
}

/// Necessary conditions for a Hermite multiplier sequence, to order `N`.
pub fn hermite_ms_check(s: &SeqSpec, order: usize) -> Result<Verdict> {
    let vals = s.values(order + 1)?;
    if is_trivial_spec(s) {
        return Ok(Verdict::trivial());
    }
    Ok(hermite_ms_check_values(&vals, &s.error_bound()))
}

/// Decides whether `s` is a Laguerre multiplier sequence: the generating
/// polynomial `f = sum g_k^*(-1) x^k` must exist, have one-signed
/// coefficients and all its zeros in `[-1, 0]`.
pub fn laguerre_ms_check(s: &SeqSpec) -> Result<Verdict> {
    if is_trivial_spec(s) {
        return Ok(Verdict::trivial());
    }
    if matches!(s, SeqSpec::ExplicitList(_)) {
        return Ok(Verdict::not_applicable(
            "a finite prefix does not determine the generating polynomial",
        ));
    }
    let alternating = match s {
        SeqSpec::AltPolyInN(_) => true,
        SeqSpec::Geometric(r) => r.is_negative(),
        _ => false,
    };
    if alternating {
        return Ok(Verdict::fail(Witness::new(
            "alternating",
            "there are no non-trivial alternating Laguerre multiplier sequences",
        )));
    }
    let f = match gstar_polynomial(s) {
        Ok(f) => f,
        Err(Error::NonPolynomial(msg)) => {
            return Ok(Verdict::fail(Witness::new("generating-function", msg)));
        }
        Err(e) => return Err(e),
    };
    if !same_sign_coeffs(&f) {
        let mut w = Witness::new("generating-function", "coefficients of f change sign");
        w.input = Some(f);
        return Ok(Verdict::fail(w));
    }
    if f.is_constant() || roots_in_closed_interval(&f, &int(-1), &int(0))? {
        let mut v = Verdict::pass_decided();
        let mut w = Witness::new("generating-function", "f has one-signed coefficients and zeros only in [-1, 0]");
        w.input = Some(f);
        v.witness = Some(w);
        return Ok(v);
    }
    let mut w = Witness::new("generating-function", "f has a zero outside [-1, 0]");
    w.input = Some(f);
    Ok(Verdict::fail(w))
}

/// Laguerre decision on an explicit polynomial `f`.
pub fn laguerre_check_generating(f: &Poly) -> Result<Verdict> {
    laguerre_ms_check(&SeqSpec::PolyInN(gamma_poly_from_generating(f)))
}

/// `gamma_n = sum_k C(n,k) c_k` as a polynomial in `n`.
fn gamma_poly_from_generating(f: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (k, c) in f.coeffs().iter().enumerate() {
        // C(n,k) = n(n-1)...(n-k+1)/k!
        let mut falling = Poly::one();
        for i in 0..k {
            falling = &falling * &Poly::from_coeffs(vec![int(-(i as i64)), int(1)]);
        }
        out = &out + &falling.scale(&(c / rational::factorial_q(k as u64)));
    }
    out
}

// ---------------------------------------------------------------------------
// Quadratic operators

/// Decides hyperbolicity preservation of `Q2 D^2 + Q1 D + Q0` with
/// `Q2 = a(x-r1)(x-r2)`, `Q1 = b(x-r3)`, `Q0 = c`. The Turán-type value
/// `b^2 (r1-r3)(r3-r2)/(r1-r2)^2 - ac` is computed in exact coefficient
/// form as `-a b^2 Q2(r3)/disc(Q2) - ac`.
pub fn quad_op_hp_check(q2: &Poly, q1: &Poly, q0: &Poly) -> Result<Verdict> {
    let deg = |p: &Poly| p.degree().map_or(-1, |d| d as i64);
    if deg(q2) > 2 || deg(q1) > 1 || deg(q0) > 0 {
        return Err(Error::InvalidArgument(format!(
            "expected deg Q2 <= 2, deg Q1 <= 1, deg Q0 = 0; got {}, {}, {}",
            deg(q2),
            deg(q1),
            deg(q0)
        )));
    }
    if deg(q2) != 2 || deg(q1) != 1 || deg(q0) != 0 {
        return Ok(Verdict::not_applicable(
            "the test needs deg Q2 = 2, deg Q1 = 1 and a nonzero constant Q0",
        ));
    }
    let a = q2.coeff(2);
    let b = q1.coeff(1);
    let c = q0.coeff(0);
    let disc = q2.coeff(1) * q2.coeff(1) - int(4) * &a * q2.coeff(0);
    if disc.is_negative() {
        return Ok(Verdict::not_applicable("Q2 has non-real zeros"));
    }
    let r3 = -q1.coeff(0) / &b;
    let value = if disc.is_zero() {
        let r = -q2.coeff(1) / (int(2) * &a);
        if r != r3 {
            let mut w = Witness::new("tti", "Q2 has a double zero different from the zero of Q1");
            w.value = Some(r3);
            return Ok(Verdict::fail(w));
        }
        &b * &b / int(4) - &a * &c
    } else {
        -(&a * &b * &b * q2.eval(&r3)) / &disc - &a * &c
    };
    let same_sign = (a.is_positive() && b.is_positive() && c.is_positive())
        || (a.is_negative() && b.is_negative() && c.is_negative());
    let mut v = if !same_sign {
        Verdict::fail(Witness::new("tti", "leading coefficients a, b, c are not of the same sign"))
    } else if value.is_negative() {
        let mut w = Witness::new("tti", "Turán-type expression is negative");
        w.value = Some(value.clone());
        Verdict::fail(w)
    } else {
        Verdict::pass_decided()
    };
    v.value = Some(value);
    Ok(v)
}

/// Splits an operator of order at most two into `(Q2, Q1, Q0)`.
pub fn quad_parts(op: &DiffOp) -> Result<(Poly, Poly, Poly)> {
    if let Some(k) = op.terms().keys().find(|&&k| k > 2) {
        return Err(Error::InvalidArgument(format!("operator has a D^{k} term")));
    }
    Ok((op.term(2), op.term(1), op.term(0)))
}

// ---------------------------------------------------------------------------
// Falsification

/// `{(x-a)(x-b): -2 <= a <= b <= 2}`, then `{H_n: n <= 8}`, then
/// `{x^n (x-1)^m: n + m <= 8}`.
pub fn standard_corpus() -> Vec<Poly> {
    let mut out = Vec::new();
    for a in -2..=2i64 {
        for b in a..=2i64 {
            out.push(Poly::from_roots(int(1), &[int(a), int(b)]));
        }
    }
    for n in 0..=8 {
        out.push(basis_poly(&Basis::hermite(), n));
    }
    for d in 0..=8usize {
        for n in 0..=d {
            let m = d - n;
            out.push(&Poly::monomial(int(1), n) * &Poly::from_ints(&[-1, 1]).pow(m as u32));
        }
    }
    out
}

/// Applies `T` to each corpus polynomial and reports the first image that
/// is nonzero and not hyperbolic. Passing is evidence, not proof.
pub fn hp_falsify(op: &DiffOp, corpus: &[Poly]) -> Result<Verdict> {
    for (i, p) in corpus.iter().enumerate() {
        if p.is_zero() || !is_hyperbolic(p)? {
            return Err(Error::NonHyperbolicCorpus { index: i });
        }
    }
    let mut skipped = 0usize;
    let mut tested = 0usize;
    for (i, p) in corpus.iter().enumerate() {
        if p.degree().unwrap_or(0) > op.order() {
            skipped += 1;
            continue;
        }
        tested += 1;
        let image = apply_op(op, p)?;
        if !image.is_zero() && !is_hyperbolic(&image)? {
            let mut w = Witness::new("image", "image of a hyperbolic polynomial has non-real zeros").at(i);
            w.input = Some(p.clone());
            w.image = Some(image);
            return Ok(Verdict::fail(w));
        }
    }
    let mut v = Verdict::pass_to_order(tested);
    v.warnings.push("no counterexample in the corpus; this is not a proof of preservation".into());
    if skipped > 0 {
        v.warnings.push(format!("{skipped} corpus entries exceed the operator order and were skipped"));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Derived sequences

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MscombKind {
    /// `{sum_k C(n,k) gamma_{m+k}}_n`
    First,
    /// `{sum_k C(m,k) gamma_{n+k}}_n`
    Second,
}

impl std::str::FromStr for MscombKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(MscombKind::First),
            "second" => Ok(MscombKind::Second),
            other => Err(Error::InvalidArgument(format!("expected first|second, got `{other}`"))),
        }
    }
}

/// The derived sequence to index `N`, by direct summation.
pub fn mscomb_derive(s: &SeqSpec, m: usize, which: MscombKind, order: usize) -> Result<Vec<Rational>> {
    let gammas = s.values(order + m + 1)?;
    Ok(mscomb_from_values(&gammas, m, which, order))
}

pub fn mscomb_from_values(gammas: &[Rational], m: usize, which: MscombKind, order: usize) -> Vec<Rational> {
    (0..=order)
        .map(|n| match which {
            MscombKind::First => (0..=n).fold(Rational::zero(), |acc, k| {
                acc + binom_q(n as i64, k as i64) * &gammas[m + k]
            }),
            MscombKind::Second => (0..=m).fold(Rational::zero(), |acc, k| {
                acc + binom_q(m as i64, k as i64) * &gammas[n + k]
            }),
        })
        .collect()
}

/// The same sequence read off `e^x D^m f` (first) or `e^{-x} D^m e^x f`
/// (second), with `f = sum gamma_k x^k/k!`.
pub fn mscomb_via_series(gammas: &[Rational], m: usize, which: MscombKind, order: usize) -> Result<Vec<Rational>> {
    let f = TruncSeries::from_values(gammas, Weight::Taylor, order + m);
    let mut g = match which {
        MscombKind::First => f,
        MscombKind::Second => f.exp_mul(&Rational::one()),
    };
    for _ in 0..m {
        g = g.derive()?;
    }
    let g = match which {
        MscombKind::First => g.exp_mul(&Rational::one()),
        MscombKind::Second => g.exp_mul(&-Rational::one()),
    };
    Ok(g.taylor_values())
}
