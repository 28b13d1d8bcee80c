//! Registry of worked examples with golden values and a verifier that
//! recomputes each one from scratch.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bases::{Basis, BasisKind};
use crate::classify::{self, quad_op_hp_check, quad_parts, Status};
use crate::decompose::{decompose, tn_operator_terms};
use crate::error::{Error, Result};
use crate::hermite::{hermite_bnk_with_error, hermite_hn};
use crate::jensen::{inverse_binomial_transform, jensen_poly};
use crate::laguerre::{laguerre_hn, laguerre_hn_recursive};
use crate::peetre::{apply_op, compose_ops, peetre_expand, DiffOp};
use crate::poly::Poly;
use crate::rational::{factorial_q, parse_rational, to_f64, Rational};
use crate::seq::SeqSpec;
use crate::series::TruncSeries;
use crate::sturm::is_hyperbolic;

const SOURCES: &[(&str, &str)] = &[
    ("hermfinin", include_str!("../fixtures/hermfinin.json")),
    ("qua", include_str!("../fixtures/qua.json")),
    ("leg-cube", include_str!("../fixtures/leg-cube.json")),
    ("sher-plus", include_str!("../fixtures/sher-plus.json")),
    ("sher-minus", include_str!("../fixtures/sher-minus.json")),
    ("slag", include_str!("../fixtures/slag.json")),
    ("malo", include_str!("../fixtures/malo.json")),
    ("notdia", include_str!("../fixtures/notdia.json")),
    ("notherm1", include_str!("../fixtures/notherm1.json")),
    ("notherm2", include_str!("../fixtures/notherm2.json")),
    ("laguerre-shift", include_str!("../fixtures/laguerre-shift.json")),
    ("m52", include_str!("../fixtures/m52.json")),
];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub version: u32,
    pub description: String,
    pub operators: BTreeMap<String, OperatorSpec>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    Diagonal {
        basis: String,
        #[serde(default)]
        shift: Option<String>,
        eigs: String,
        order: usize,
    },
    Explicit {
        order: usize,
        terms: BTreeMap<String, String>,
    },
    Power {
        of: String,
        exponent: u32,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Check {
    /// `Q_k` values; with `exhaustive`, every other `Q_k` must vanish.
    Terms {
        op: String,
        expect: BTreeMap<String, String>,
        #[serde(default)]
        exhaustive: bool,
        note: String,
    },
    /// Two named operators agree term by term.
    Same { op: String, other: String, note: String },
    /// `T_n` in `x^k D^k` form.
    Tn {
        op: String,
        n: i64,
        expect: BTreeMap<String, String>,
        note: String,
    },
    /// `T[input]` (or `T_n[input]`) and whether it is hyperbolic.
    Image {
        op: String,
        #[serde(default)]
        tn: Option<i64>,
        input: String,
        expect: String,
        hyperbolic: bool,
        note: String,
    },
    /// Quadratic-operator test on `T` or `T_n`.
    Quad {
        op: String,
        #[serde(default)]
        tn: Option<i64>,
        value: String,
        status: String,
        note: String,
    },
    /// Leading eigenvalues `b_{n,0}, b_{n,1}, ...` of `T_n`.
    Row {
        op: String,
        n: i64,
        expect: Vec<String>,
        note: String,
    },
    /// Rows absent from the decomposition.
    ZeroRows { op: String, rows: Vec<i64>, note: String },
    /// `sum_k b_{n,k} x^k/k! = factor e^{exp x}` to the stated order.
    RowSeries {
        op: String,
        n: i64,
        factor: String,
        exp: String,
        series_order: usize,
        note: String,
    },
    /// Hermite `h_n = factor e^{exp x}`, by the series formula and from the
    /// decomposition rows of `op`.
    HermiteHn {
        op: String,
        eigs: String,
        n: usize,
        factor: String,
        exp: String,
        series_order: usize,
        note: String,
    },
    /// Laguerre `h_n` by the derivative formula, the recursion and the rows of `op`.
    LaguerreHn {
        op: String,
        eigs: String,
        n: usize,
        expect: String,
        note: String,
    },
    /// Coefficients of the Jensen polynomial `g_n` within `tol`.
    Jensen {
        eigs: String,
        n: usize,
        expect: Vec<String>,
        tol: String,
        note: String,
    },
    /// Hermite `b_{2n,m}` within `tol`.
    Bnk {
        eigs: String,
        n: usize,
        m: usize,
        expect: String,
        tol: String,
        note: String,
    },
    /// A classification verdict, on the sequence or on a Hermite row of it.
    Verdict {
        test: String,
        eigs: String,
        #[serde(default)]
        hermite_row: Option<usize>,
        #[serde(default)]
        len: Option<usize>,
        status: String,
        #[serde(default)]
        witness: Option<String>,
        note: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

pub fn fixture_ids() -> Vec<&'static str> {
    SOURCES.iter().map(|(id, _)| *id).collect()
}

pub fn load_fixture(id: &str) -> Result<Fixture> {
    let (_, src) = SOURCES
        .iter()
        .find(|(k, _)| *k == id)
        .ok_or_else(|| Error::UnknownExample(id.to_string()))?;
    Ok(serde_json::from_str(src)?)
}

pub fn all_fixtures() -> Result<Vec<Fixture>> {
    fixture_ids().into_iter().map(load_fixture).collect()
}

fn poly(s: &str) -> Result<Poly> {
    Poly::parse(s, 'x')
}

fn seq(s: &str) -> Result<SeqSpec> {
    s.parse()
}

struct Ops<'a> {
    specs: &'a BTreeMap<String, OperatorSpec>,
    built: BTreeMap<String, DiffOp>,
}

impl Ops<'_> {
    fn get(&mut self, name: &str) -> Result<DiffOp> {
        if let Some(op) = self.built.get(name) {
            return Ok(op.clone());
        }
        let spec = self
            .specs
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("fixture has no operator `{name}`")))?;
        let op = match spec {
            OperatorSpec::Diagonal { basis, shift, eigs, order } => {
                let kind: BasisKind = basis.parse()?;
                let b = match shift {
                    Some(t) => Basis::shifted(kind, parse_rational(t)?),
                    None => Basis::new(kind),
                };
                peetre_expand(&b, &seq(eigs)?, *order)?
            }
            OperatorSpec::Explicit { order, terms } => {
                expected_op(*order, terms)?
            }
            OperatorSpec::Power { of, exponent } => {
                let base = self.get(of)?;
                let mut acc = DiffOp::identity(base.order());
                for _ in 0..*exponent {
                    acc = compose_ops(&acc, &base);
                }
                acc
            }
        };
        self.built.insert(name.to_string(), op.clone());
        Ok(op)
    }

    fn target(&mut self, name: &str, tn: Option<i64>) -> Result<DiffOp> {
        let op = self.get(name)?;
        Ok(match tn {
            Some(n) => tn_operator_terms(&op, n),
            None => op,
        })
    }
}

fn target_label(op: &str, tn: Option<i64>) -> String {
    match tn {
        Some(n) => format!("{op}_{n}"),
        None => op.to_string(),
    }
}

fn render_terms(op: &DiffOp) -> String {
    op.to_string()
}

fn term_index(k: &str) -> Result<usize> {
    k.parse()
        .map_err(|_| Error::InvalidArgument(format!("bad term index `{k}`")))
}

fn expected_op(order: usize, expect: &BTreeMap<String, String>) -> Result<DiffOp> {
    let parsed: Result<Vec<(usize, Poly)>> =
        expect.iter().map(|(k, p)| Ok((term_index(k)?, poly(p)?))).collect();
    DiffOp::from_terms(order, parsed?)
}

fn result(label: String, passed: bool, expected: String, got: String) -> CheckResult {
    CheckResult {
        label,
        passed,
        expected,
        got,
    }
}

fn fmt_vals(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn fmt_approx(v: &Rational) -> String {
    format!("{:.6}", to_f64(v))
}

/// `factor(x) e^{exp x}` truncated at `order`.
fn factor_exp_series(factor: &str, exp: &str, order: usize) -> Result<TruncSeries> {
    Ok(TruncSeries::from_poly(&poly(factor)?, order).mul(&TruncSeries::exp(&parse_rational(exp)?, order)))
}

/// `h` coefficients from a Taylor-weighted inverse binomial transform of a row.
fn row_to_h(row: &[Rational], order: usize) -> TruncSeries {
    let a = inverse_binomial_transform(row);
    let coeffs = a
        .iter()
        .enumerate()
        .map(|(k, v)| v / factorial_q(k as u64))
        .collect();
    TruncSeries::new(coeffs, order)
}

fn run_check(ops: &mut Ops<'_>, check: &Check) -> Result<CheckResult> {
    Ok(match check {
        Check::Terms { op, expect, exhaustive, .. } => {
            let got = ops.get(op)?;
            let want = expected_op(got.order(), expect)?;
            let keys: Result<Vec<usize>> = expect.keys().map(|k| term_index(k)).collect();
            let keys = keys?;
            let passed = if *exhaustive {
                got == want
            } else {
                keys.iter().all(|k| got.term(*k) == want.term(*k))
            };
            let shown = if *exhaustive {
                got.clone()
            } else {
                got.truncate(keys.iter().copied().max().unwrap_or(0))
            };
            result(
                format!("{op} terms"),
                passed,
                render_terms(&want),
                render_terms(&shown),
            )
        }
        Check::Same { op, other, .. } => {
            let a = ops.get(op)?;
            let b = ops.get(other)?;
            let k = a.order().min(b.order());
            let passed = a.truncate(k) == b.truncate(k);
            result(format!("{op} = {other}"), passed, render_terms(&b), render_terms(&a))
        }
        Check::Tn { op, n, expect, .. } => {
            let got = tn_operator_terms(&ops.get(op)?, *n);
            let want = expected_op(got.order(), expect)?;
            result(format!("{op}_{n}"), got == want, render_terms(&want), render_terms(&got))
        }
        Check::Image {
            op,
            tn,
            input,
            expect,
            hyperbolic,
            ..
        } => {
            let t = ops.target(op, *tn)?;
            let p = poly(input)?;
            let deg = p.degree().unwrap_or(0);
            // `T_n` of a finite-order operator has no terms past its row.
            let t = if tn.is_some() && deg > t.order() { t.with_order(deg)? } else { t };
            let got = apply_op(&t, &p)?;
            let want = poly(expect)?;
            let hyp = got.is_zero() || is_hyperbolic(&got)?;
            result(
                format!("{}[{}]", target_label(op, *tn), p),
                got == want && hyp == *hyperbolic,
                format!("{want} (hyperbolic: {hyperbolic})"),
                format!("{got} (hyperbolic: {hyp})"),
            )
        }
        Check::Quad { op, tn, value, status, .. } => {
            let t = ops.target(op, *tn)?;
            let (q2, q1, q0) = quad_parts(&t)?;
            let v = quad_op_hp_check(&q2, &q1, &q0)?;
            let want = parse_rational(value)?;
            let got_value = v.value.clone().unwrap_or_else(Rational::zero);
            result(
                format!("quadratic test on {}", target_label(op, *tn)),
                v.value.as_ref() == Some(&want) && v.status.name() == status,
                format!("{status} value={want}"),
                format!("{} value={got_value}", v.status.name()),
            )
        }
        Check::Row { op, n, expect, .. } => {
            let d = decompose(&ops.get(op)?);
            let want: Result<Vec<Rational>> = expect.iter().map(|s| parse_rational(s)).collect();
            let want = want?;
            let got: Vec<Rational> = d
                .row(*n)
                .map(|r| r.iter().take(want.len()).cloned().collect())
                .unwrap_or_default();
            result(format!("b_{{{n},k}}"), got == want, fmt_vals(&want), fmt_vals(&got))
        }
        Check::ZeroRows { op, rows, .. } => {
            let d = decompose(&ops.get(op)?);
            let present: Vec<i64> = rows.iter().copied().filter(|n| d.row(*n).is_some()).collect();
            result(
                format!("vanishing rows {rows:?}"),
                present.is_empty(),
                "none present".into(),
                format!("present: {present:?}"),
            )
        }
        Check::RowSeries {
            op,
            n,
            factor,
            exp,
            series_order,
            ..
        } => {
            let d = decompose(&ops.get(op)?);
            let row = d.row(*n).unwrap_or(&[]);
            let got = TruncSeries::from_values(row, crate::series::Weight::Taylor, *series_order);
            let want = factor_exp_series(factor, exp, *series_order)?;
            let enough = row.len() > *series_order;
            result(
                format!("sum_k b_{{{n},k}} x^k/k!"),
                enough && got == want,
                format!("{factor} e^({exp} x) to order {series_order}"),
                if enough {
                    fmt_vals(&got.coeffs()[..4.min(got.coeffs().len())])
                } else {
                    format!("row has only {} terms", row.len())
                },
            )
        }
        Check::HermiteHn {
            op,
            eigs,
            n,
            factor,
            exp,
            series_order,
            ..
        } => {
            let s = seq(eigs)?;
            let via_formula = hermite_hn(&s, *n, series_order + 2 * n)?;
            let d = decompose(&ops.get(op)?);
            let row = d.row(2 * *n as i64).map(|r| r.to_vec()).unwrap_or_default();
            let enough = row.len() > *series_order || row.is_empty();
            let via_rows = row_to_h(&row, *series_order);
            let want = factor_exp_series(factor, exp, *series_order)?;
            let passed = via_formula == want && via_rows == want && enough;
            result(
                format!("h_{n}"),
                passed,
                format!("{factor} e^({exp} x) to order {series_order}"),
                format!(
                    "series formula {}, decomposition rows {}",
                    if via_formula == want { "agrees" } else { "differs" },
                    if via_rows == want && enough { "agree" } else { "differ" }
                ),
            )
        }
        Check::LaguerreHn { op, eigs, n, expect, .. } => {
            let s = seq(eigs)?;
            let want = poly(expect)?;
            let direct = laguerre_hn(&s, *n)?;
            let recursive = laguerre_hn_recursive(&s, *n)?;
            let d = decompose(&ops.get(op)?);
            let row = d.row(*n as i64).map(|r| r.to_vec()).unwrap_or_default();
            let from_rows = Poly::from_coeffs(inverse_binomial_transform(&row));
            result(
                format!("h_{n}"),
                direct == want && recursive == want && from_rows == want,
                want.to_string(),
                format!("{direct} / {recursive} / {from_rows}"),
            )
        }
        Check::Jensen { eigs, n, expect, tol, .. } => {
            let s = seq(eigs)?;
            let g = jensen_poly(&s, *n)?;
            let tol = parse_rational(tol)?;
            let want: Result<Vec<Rational>> = expect.iter().map(|s| parse_rational(s)).collect();
            let want = want?;
            let passed = want.len() == *n + 1
                && want.iter().enumerate().all(|(k, w)| (g.coeff(k) - w).abs() <= tol);
            let got: Vec<String> = (0..=*n).map(|k| fmt_approx(&g.coeff(k))).collect();
            result(format!("g_{n} coefficients"), passed, expect.join(", "), got.join(", "))
        }
        Check::Bnk { eigs, n, m, expect, tol, .. } => {
            let s = seq(eigs)?;
            let (v, bound) = hermite_bnk_with_error(&s, *n, *m)?;
            let want = parse_rational(expect)?;
            let tol = parse_rational(tol)?;
            result(
                format!("b_{{{},{m}}}", 2 * n),
                (&v - &want).abs() + bound <= tol,
                format!("{expect} within {tol}"),
                fmt_approx(&v),
            )
        }
        Check::Verdict {
            test,
            eigs,
            hermite_row,
            len,
            status,
            witness,
            ..
        } => {
            let s = seq(eigs)?;
            let order = len.unwrap_or(12);
            let v = match hermite_row {
                Some(n) => {
                    let mut vals = Vec::new();
                    let mut eps = Rational::zero();
                    for m in 0..=order {
                        let (b, e) = hermite_bnk_with_error(&s, *n, m)?;
                        vals.push(b);
                        if e > eps {
                            eps = e;
                        }
                    }
                    match test.as_str() {
                        "hermite" => classify::hermite_ms_check_values(&vals, &eps),
                        "classical" => classify::classical_check_values(&vals, &eps),
                        other => return Err(Error::InvalidArgument(format!("row test `{other}`"))),
                    }
                }
                None => match test.as_str() {
                    "hermite" => classify::hermite_ms_check(&s, order)?,
                    "classical" => classify::classical_ms_check(&s, order)?,
                    "laguerre" => classify::laguerre_ms_check(&s)?,
                    other => return Err(Error::InvalidArgument(format!("unknown test `{other}`"))),
                },
            };
            let got_witness = v.witness.as_ref().map(|w| w.check.clone());
            let status_ok = v.status.name() == status
                || (status == "PASS" && matches!(v.status, Status::PassDecided | Status::PassToOrder(_)));
            let witness_ok = witness.is_none() || *witness == got_witness;
            let label = match hermite_row {
                Some(n) => format!("{test} check on b_{{{},k}}", 2 * n),
                None => format!("{test} check on {eigs}"),
            };
            result(
                label,
                status_ok && witness_ok,
                format!("{status}{}", witness.as_ref().map(|w| format!(" [{w}]")).unwrap_or_default()),
                v.to_string(),
            )
        }
    })
}

/// Builds a named operator of `f`, or its `T_n` when `tn` is given.
pub fn fixture_operator(f: &Fixture, name: &str, tn: Option<i64>) -> Result<DiffOp> {
    Ops { specs: &f.operators, built: BTreeMap::new() }.target(name, tn)
}

pub fn verify_fixture(f: &Fixture) -> Result<FixtureReport> {
    let mut ops = Ops {
        specs: &f.operators,
        built: BTreeMap::new(),
    };
    let mut checks = Vec::new();
    for c in &f.checks {
        checks.push(run_check(&mut ops, c)?);
    }
    Ok(FixtureReport {
        id: f.id.clone(),
        description: f.description.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

pub fn verify_example(id: &str) -> Result<FixtureReport> {
    verify_fixture(&load_fixture(id)?)
}

pub fn verify_all() -> Result<Vec<FixtureReport>> {
    fixture_ids().into_iter().map(verify_example).collect()
}
