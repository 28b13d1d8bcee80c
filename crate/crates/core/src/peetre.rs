//! Differential operators `sum_k Q_k(x) D^k` truncated at a finite order,
//! their construction from a diagonal action, application and composition.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bases::{basis_poly, Basis};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{binom_q, Rational};
use crate::seq::SeqSpec;

/// `sum_{k<=order} Q_k(x) D^k`. Terms above `order` are unknown, not zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DiffOpRepr", into = "DiffOpRepr")]
pub struct DiffOp {
    order: usize,
    terms: BTreeMap<usize, Poly>,
}

#[derive(Serialize, Deserialize)]
struct DiffOpRepr {
    order: usize,
    terms: BTreeMap<usize, Poly>,
}

impl TryFrom<DiffOpRepr> for DiffOp {
    type Error = Error;

    fn try_from(r: DiffOpRepr) -> Result<Self> {
        DiffOp::from_terms(r.order, r.terms)
    }
}

impl From<DiffOp> for DiffOpRepr {
    fn from(op: DiffOp) -> Self {
        DiffOpRepr {
            order: op.order,
            terms: op.terms,
        }
    }
}

impl DiffOp {
    pub fn zero(order: usize) -> Self {
        DiffOp {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut op = DiffOp::zero(order);
        op.set(0, Poly::one());
        op
    }

    /// Builds an operator from `(k, Q_k)` pairs; zero terms are dropped.
    pub fn from_terms(order: usize, terms: impl IntoIterator<Item = (usize, Poly)>) -> Result<Self> {
        let mut op = DiffOp::zero(order);
        for (k, q) in terms {
            if k > order {
                return Err(Error::OrderOverflow(format!("term D^{k} exceeds order {order}")));
            }
            op.set(k, &op.term(k) + &q);
        }
        Ok(op)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn term(&self, k: usize) -> Poly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<usize, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stores `Q_k`; panics if `k` exceeds the order.
    pub fn set(&mut self, k: usize, q: Poly) {
        assert!(k <= self.order, "term D^{k} exceeds order {}", self.order);
        if q.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, q);
        }
    }

    /// Drops every term above `order`.
    pub fn truncate(&self, order: usize) -> DiffOp {
        DiffOp {
            order: order.min(self.order),
            terms: self.terms.range(..=order).map(|(k, q)| (*k, q.clone())).collect(),
        }
    }

    /// Re-labels the truncation order without touching the terms.
    pub fn with_order(&self, order: usize) -> Result<DiffOp> {
        DiffOp::from_terms(order, self.terms.clone())
    }

    /// `max_k (deg Q_k - k)` over stored terms, `None` for the zero operator.
    pub fn max_excess(&self) -> Option<i64> {
        self.terms
            .iter()
            .map(|(k, q)| q.degree().unwrap_or(0) as i64 - *k as i64)
            .max()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, q)| match k {
                0 => format!("({q})"),
                1 => format!("({q})D"),
                _ => format!("({q})D^{k}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Solves for `Q_0..Q_K` given the images `T[B_n]` of the first `K+1` basis
/// polynomials, using `Q_n = (T[B_n] - sum_{k<n} Q_k B_n^{(k)}) / B_n^{(n)}`.
pub fn peetre_from_action(b: &Basis, images: &[Poly]) -> Result<DiffOp> {
    let Some(order) = images.len().checked_sub(1) else {
        return Err(Error::InvalidArgument("at least one image is required".into()));
    };
    let mut op = DiffOp::zero(order);
    let mut qs: Vec<Poly> = Vec::with_capacity(order + 1);
    for (n, image) in images.iter().enumerate() {
        let bn = basis_poly(b, n);
        let mut rhs = image.clone();
        let mut deriv = bn.clone();
        for q in &qs {
            if deriv.is_zero() {
                break;
            }
            rhs = &rhs - &(q * &deriv);
            deriv = deriv.derive();
        }
        // `deriv` is now the constant B_n^{(n)}.
        let lead = deriv.coeff(0);
        let qn = rhs.scale(&lead.recip());
        op.set(n, qn.clone());
        qs.push(qn);
    }
    Ok(op)
}

/// Peetre expansion of the diagonal operator `T[B_n] = gamma_n B_n`, to order `K`.
pub fn peetre_expand(b: &Basis, s: &SeqSpec, order: usize) -> Result<DiffOp> {
    let gammas = s.values(order + 1)?;
    let images: Vec<Poly> = gammas
        .iter()
        .enumerate()
        .map(|(n, g)| basis_poly(b, n).scale(g))
        .collect();
    peetre_from_action(b, &images)
}

/// `sum_k Q_k p^{(k)}`; requires `deg p <= order`.
pub fn apply_op(op: &DiffOp, p: &Poly) -> Result<Poly> {
    if let Some(d) = p.degree() {
        if d > op.order {
            return Err(Error::OrderOverflow(format!(
                "input degree {d} exceeds operator order {}",
                op.order
            )));
        }
    }
    let mut out = Poly::zero();
    for (k, q) in &op.terms {
        let dk = p.derive_n(*k);
        if !dk.is_zero() {
            out = &out + &(q * &dk);
        }
    }
    Ok(out)
}

/// `A o B` to order `min(order(A), order(B))`.
pub fn compose_ops(a: &DiffOp, b: &DiffOp) -> DiffOp {
    compose_ops_to(a, b, a.order.min(b.order)).expect("order within both operands")
}

/// `A o B` truncated at `order`, which may not exceed either operand's order.
pub fn compose_ops_to(a: &DiffOp, b: &DiffOp, order: usize) -> Result<DiffOp> {
    if order > a.order.min(b.order) {
        return Err(Error::OrderOverflow(format!(
            "composition order {order} exceeds operand orders {} and {}",
            a.order, b.order
        )));
    }
    let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
    for (&i, ai) in &a.terms {
        for (&j, bj) in &b.terms {
            let mut deriv = bj.clone();
            for l in 0..=i {
                if deriv.is_zero() {
                    break;
                }
                let m = i - l + j;
                if m <= order {
                    let c = binom_q(i as i64, l as i64);
                    let term = (ai * &deriv).scale(&c);
                    let slot = acc.entry(m).or_default();
                    *slot = &*slot + &term;
                }
                deriv = deriv.derive();
            }
        }
    }
    DiffOp::from_terms(order, acc)
}

/// Scalar multiple `c T`.
pub fn scale_op(op: &DiffOp, c: &Rational) -> DiffOp {
    if c.is_zero() {
        return DiffOp::zero(op.order);
    }
    DiffOp {
        order: op.order,
        terms: op.terms.iter().map(|(k, q)| (*k, q.scale(c))).collect(),
    }
}
