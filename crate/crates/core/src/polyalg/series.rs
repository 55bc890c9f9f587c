use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::Rational;
use crate::error::{Error, Result};

/// A power series in `t` known modulo `t^precision`, or exactly when `exact`
/// is set (then it is the polynomial given by `coeffs`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
    precision: usize,
    exact: bool,
}

/// Order of vanishing of a series, or of an ideal along an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrdResult {
    Exact(usize),
    /// All coefficients below this precision vanish; the true order is at
    /// least this value.
    Exhausted(usize),
    Infinity,
}

impl OrdResult {
    pub fn exact(self) -> Option<usize> {
        match self {
            OrdResult::Exact(k) => Some(k),
            _ => None,
        }
    }

    /// Conservative minimum: an exhausted value only loses to an exact value
    /// strictly below its precision.
    pub fn min(self, other: OrdResult) -> OrdResult {
        use OrdResult::*;
        match (self, other) {
            (Infinity, x) | (x, Infinity) => x,
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exhausted(a), Exhausted(b)) => Exhausted(a.min(b)),
            (Exact(k), Exhausted(n)) | (Exhausted(n), Exact(k)) => {
                if k < n {
                    Exact(k)
                } else {
                    Exhausted(n)
                }
            }
        }
    }

    /// Sum of orders (valuation of a product); `None` unless both are exact
    /// or one is infinite.
    pub fn checked_add(self, other: OrdResult) -> Option<OrdResult> {
        use OrdResult::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Some(Exact(a + b)),
            (Infinity, _) | (_, Infinity) => Some(Infinity),
            _ => None,
        }
    }
}

impl PartialOrd for OrdResult {
    /// Only comparable when both are exact or infinite.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use OrdResult::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Some(a.cmp(b)),
            (Infinity, Infinity) => Some(Ordering::Equal),
            (Exact(_), Infinity) => Some(Ordering::Less),
            (Infinity, Exact(_)) => Some(Ordering::Greater),
            _ => None,
        }
    }
}

impl fmt::Display for OrdResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdResult::Exact(k) => write!(f, "{k}"),
            OrdResult::Exhausted(n) => write!(f, ">={n}"),
            OrdResult::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
}

impl TruncSeries {
    /// Series known modulo `t^precision`; coefficients at or above the
    /// precision are discarded.
    pub fn truncated(mut coeffs: Vec<Rational>, precision: usize) -> Self {
        coeffs.truncate(precision);
        let mut s = TruncSeries { coeffs, precision, exact: false };
        s.trim();
        s
    }

    /// A polynomial in `t`, known exactly.
    pub fn exact(coeffs: Vec<Rational>) -> Self {
        let mut s = TruncSeries { coeffs, precision: 0, exact: true };
        s.trim();
        s.precision = s.coeffs.len();
        s
    }

    pub fn zero_exact() -> Self {
        TruncSeries::exact(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        TruncSeries::exact(vec![c])
    }

    /// `t^k` as an exact series.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::from_integer(1.into());
        TruncSeries::exact(c)
    }

    /// Reads a polynomial over the single variable `t`.
    pub fn from_t_poly(p: &Poly, precision: Option<usize>) -> Result<Self> {
        if p.vars().len() != 1 || p.vars().name(0) != "t" {
            return Err(Error::InvalidInput("arc entries must be polynomials in t".into()));
        }
        let deg = p.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.degree() as usize] = c.clone();
        }
        Ok(match precision {
            Some(n) => TruncSeries::truncated(coeffs, n),
            None => TruncSeries::exact(coeffs),
        })
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// `None` for exact series.
    pub fn precision(&self) -> Option<usize> {
        (!self.exact).then_some(self.precision)
    }

    /// Coefficient of `t^k`, if known.
    pub fn coeff(&self, k: usize) -> Option<Rational> {
        if !self.exact && k >= self.precision {
            return None;
        }
        Some(self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero))
    }

    /// Whether the coefficient of `t^k` is known.
    pub fn knows(&self, k: usize) -> bool {
        self.exact || k < self.precision
    }

    /// Reduces the series modulo `t^n` (the result is no longer exact unless
    /// it already vanishes above `n`).
    pub fn truncate(&self, n: usize) -> TruncSeries {
        if self.exact && self.coeffs.len() <= n {
            return self.clone();
        }
        TruncSeries::truncated(self.coeffs.clone(), n.min(self.precision().unwrap_or(n)))
    }

    fn combined_precision(&self, other: &TruncSeries) -> Option<usize> {
        match (self.precision(), other.precision()) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => Some(a.min(b)),
        }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs: Vec<Rational> = (0..len)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                let b = other.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                a + b
            })
            .collect();
        match self.combined_precision(other) {
            None => TruncSeries::exact(coeffs),
            Some(n) => TruncSeries::truncated(coeffs, n),
        }
    }

    pub fn scale(&self, k: &Rational) -> TruncSeries {
        let coeffs = self.coeffs.iter().map(|c| c * k).collect();
        match self.precision() {
            None => TruncSeries::exact(coeffs),
            Some(n) => TruncSeries::truncated(coeffs, n),
        }
    }

    /// Product with the conservative precision `min(Na, Nb)`.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let prec = self.combined_precision(other);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return match prec {
                None => TruncSeries::zero_exact(),
                Some(n) => TruncSeries::truncated(Vec::new(), n),
            };
        }
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = prec.map_or(full, |n| full.min(n));
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        match prec {
            None => TruncSeries::exact(coeffs),
            Some(n) => TruncSeries::truncated(coeffs, n),
        }
    }

    pub fn op(&self, other: &TruncSeries, op: SeriesOp) -> TruncSeries {
        match op {
            SeriesOp::Add => self.add(other),
            SeriesOp::Mul => self.mul(other),
        }
    }

    pub fn ord(&self) -> OrdResult {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => OrdResult::Exact(k),
            None if self.exact => OrdResult::Infinity,
            None => OrdResult::Exhausted(self.precision),
        }
    }

    /// Series `s(λ t)`.
    pub fn rescale_parameter(&self, lambda: &Rational) -> TruncSeries {
        let mut pow = Rational::from_integer(1.into());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &pow;
                pow *= lambda;
                v
            })
            .collect();
        match self.precision() {
            None => TruncSeries::exact(coeffs),
            Some(n) => TruncSeries::truncated(coeffs, n),
        }
    }
}

pub fn series_ord(a: &TruncSeries) -> OrdResult {
    a.ord()
}

pub fn series_ops(a: &TruncSeries, b: &TruncSeries, op: SeriesOp) -> TruncSeries {
    a.op(b, op)
}
