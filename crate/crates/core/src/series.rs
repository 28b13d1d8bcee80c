//! Truncated formal power series over exact rationals.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{self, Rational};
use crate::seq::SeqSpec;

/// Coefficient weighting for [`TruncSeries::from_sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// `gamma_k / k!`
    Taylor,
    /// `gamma_k`
    Plain,
}

/// `sum_{k<=N} c_k x^k`; only coefficients up to `order` are meaningful.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    #[serde(with = "rational::serde_rational_vec")]
    coeffs: Vec<Rational>,
    order: usize,
}

impl TryFrom<SeriesRepr> for TruncSeries {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        if r.coeffs.len() > r.order + 1 {
            return Err(Error::Json(format!(
                "series of order {} carries {} coefficients",
                r.order,
                r.coeffs.len()
            )));
        }
        Ok(TruncSeries::new(r.coeffs, r.order))
    }
}

impl From<TruncSeries> for SeriesRepr {
    fn from(s: TruncSeries) -> Self {
        let order = s.order();
        SeriesRepr { coeffs: s.coeffs, order }
    }
}

impl TruncSeries {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients remain.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::new(Vec::new(), order)
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        TruncSeries::new(p.coeffs().to_vec(), order)
    }

    /// Truncation of `e^{a x}`.
    pub fn exp(a: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        for k in 0..=order {
            coeffs.push(term.clone());
            term = term * a / rational::int(k as i64 + 1);
        }
        TruncSeries { coeffs }
    }

    pub fn from_values(values: &[Rational], weight: Weight, order: usize) -> Self {
        let coeffs = values
            .iter()
            .take(order + 1)
            .enumerate()
            .map(|(k, g)| match weight {
                Weight::Taylor => g / rational::factorial_q(k as u64),
                Weight::Plain => g.clone(),
            })
            .collect();
        TruncSeries::new(coeffs, order)
    }

    pub fn from_sequence(s: &SeqSpec, weight: Weight, order: usize) -> Result<Self> {
        if !s.is_exact() {
            return Err(Error::SequenceValue(format!(
                "`{s}` is approximate; series coefficients must be exact"
            )));
        }
        Ok(TruncSeries::from_values(&s.values(order + 1)?, weight, order))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    /// `k! c_k`, i.e. the sequence whose Taylor series this is.
    pub fn taylor_values(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * rational::factorial_q(k as u64))
            .collect()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        TruncSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncSeries { coeffs }
    }

    /// Product with the truncation of `e^{a x}` at the same order.
    pub fn exp_mul(&self, a: &Rational) -> Self {
        self.mul(&TruncSeries::exp(a, self.order()))
    }

    /// Termwise derivative; the order drops by one.
    pub fn derive(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderOverflow("cannot differentiate a series of order 0".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rational::int(k as i64))
            .collect();
        Ok(TruncSeries { coeffs })
    }
}
