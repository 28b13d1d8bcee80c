//! Rewriting `T = sum_k Q_k D^k` as `T = sum_n T_n D^n`, where each `T_n`
//! acts diagonally on monomials: `T_n[x^k] = b_{n,k} x^k`. Negative `n`
//! appear when some `deg Q_k > k`; `D^{-1}` is then purely formal.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::jensen::{binomial_transform, inverse_binomial_transform};
use crate::peetre::DiffOp;
use crate::poly::Poly;
use crate::rational::{self, binom_q, factorial_q, Rational};

/// `n -> {b_{n,k}}`; all-zero rows are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TnDecomposition {
    pub order: usize,
    pub entries: BTreeMap<i64, Row>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Row(#[serde(with = "rational::serde_rational_vec")] pub Vec<Rational>);

fn q_coeff(op: &DiffOp, m: i64, j: usize) -> Rational {
    if m < 0 || m as usize > op.order() {
        return Rational::zero();
    }
    op.terms().get(&(m as usize)).map_or_else(Rational::zero, |q| q.coeff(j))
}

/// `Q_{j+n}^{(j)}(0)`, zero outside the stored range.
fn q_deriv_at_zero(op: &DiffOp, n: i64, j: usize) -> Rational {
    q_coeff(op, j as i64 + n, j) * factorial_q(j as u64)
}

/// `b_{n,k} = sum_j C(k,j) Q_{j+n}^{(j)}(0)` for `k = 0..len`.
pub fn tn_eigenvalues(op: &DiffOp, n: i64, len: usize) -> Vec<Rational> {
    let a: Vec<Rational> = (0..len).map(|j| q_deriv_at_zero(op, n, j)).collect();
    binomial_transform(&a)
}

/// Number of `k` values for which `T_n` can carry a term, given order `K`.
fn row_len(order: usize, n: i64) -> usize {
    (order as i64 - n + 1).max(0) as usize
}

/// `T_n = sum_k Q_{k+n}^{(k)}(0)/k! x^k D^k`.
pub fn tn_operator_terms(op: &DiffOp, n: i64) -> DiffOp {
    let len = row_len(op.order(), n);
    let order = len.saturating_sub(1);
    DiffOp::from_terms(
        order,
        (0..len).map(|k| (k, Poly::monomial(q_coeff(op, k as i64 + n, k), k))),
    )
    .expect("terms within order")
}

/// Smallest index carrying a term: `-max(deg Q_k - k)` when that is negative.
fn lowest_index(op: &DiffOp) -> i64 {
    -op.max_excess().unwrap_or(0).max(0)
}

pub fn decompose(op: &DiffOp) -> TnDecomposition {
    let mut entries = BTreeMap::new();
    if !op.is_zero() {
        for n in lowest_index(op)..=op.order() as i64 {
            let row = tn_eigenvalues(op, n, row_len(op.order(), n));
            if row.iter().any(|b| !b.is_zero()) {
                entries.insert(n, Row(row));
            }
        }
    }
    TnDecomposition {
        order: op.order(),
        entries,
    }
}

impl TnDecomposition {
    /// Each `T_n` in `x^k D^k` form.
    pub fn operators(&self) -> BTreeMap<i64, DiffOp> {
        self.entries
            .iter()
            .map(|(n, row)| {
                let a = inverse_binomial_transform(&row.0);
                let order = a.len().saturating_sub(1);
                let op = DiffOp::from_terms(
                    order,
                    a.iter()
                        .enumerate()
                        .map(|(k, v)| (k, Poly::monomial(v / factorial_q(k as u64), k))),
                )
                .expect("terms within order");
                (*n, op)
            })
            .collect()
    }

    pub fn row(&self, n: i64) -> Option<&[Rational]> {
        self.entries.get(&n).map(|r| r.0.as_slice())
    }
}

/// Inverse of [`decompose`]: reassembles the `Q_k` from the rows.
pub fn reconstruct(d: &TnDecomposition) -> Result<DiffOp> {
    let mut terms: BTreeMap<usize, Poly> = BTreeMap::new();
    for (n, row) in &d.entries {
        let a = inverse_binomial_transform(&row.0);
        for (j, aj) in a.iter().enumerate() {
            let m = j as i64 + n;
            if aj.is_zero() || m < 0 || m as usize > d.order {
                continue;
            }
            let slot = terms.entry(m as usize).or_default();
            *slot = &*slot + &Poly::monomial(aj / factorial_q(j as u64), j);
        }
    }
    DiffOp::from_terms(d.order, terms)
}

/// `sum_j C(k,j) c_j`, used to turn an `x^k D^k` operator into eigenvalues.
pub fn classical_eigenvalues(op: &DiffOp, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|k| {
            (0..=k).fold(Rational::zero(), |acc, j| {
                acc + binom_q(k as i64, j as i64) * op.term(j).coeff(j) * factorial_q(j as u64)
            })
        })
        .collect()
}
