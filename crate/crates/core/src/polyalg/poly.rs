use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::var::VarSet;
use super::Rational;
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted in descending canonical (grevlex) order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Arc<VarSet>,
    terms: Vec<(Monomial, Rational)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Poly { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Poly::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rational) -> Self {
        Poly::monomial(vars, Monomial::one(), c)
    }

    pub fn from_int(vars: &Arc<VarSet>, c: i64) -> Self {
        Poly::constant(vars, Rational::from_integer(c.into()))
    }

    pub fn var(vars: &Arc<VarSet>, index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        Poly::monomial(vars, Monomial::var(index), Rational::one())
    }

    pub fn monomial(vars: &Arc<VarSet>, m: Monomial, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { vars: vars.clone(), terms }
    }

    /// Collects arbitrary terms, merging equal monomials.
    pub fn from_terms(vars: &Arc<VarSet>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Poly::from_map(vars, acc)
    }

    fn from_map(vars: &Arc<VarSet>, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn same_vars(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Minimal total degree of a term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.order()
    }

    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == degree).cloned().collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// Lowest-degree homogeneous component.
    pub fn initial_form(&self) -> Poly {
        match self.order() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    /// Leading term under `order`; `None` for the zero polynomial.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(x, _)| m.cmp(x)) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vars.len()];
        for (m, _) in &self.terms {
            for v in m.support() {
                seen[v] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    pub fn checked_arith(&self, other: &Poly, op: ArithOp) -> Result<Poly> {
        if !self.same_vars(other) {
            return Err(Error::VarsetMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add_scaled(other, &Rational::one()),
            ArithOp::Sub => self.add_scaled(other, &-Rational::one()),
            ArithOp::Mul => self.mul_impl(other),
        })
    }

    fn add_scaled(&self, other: &Poly, k: &Rational) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b.0.clone(), &b.1 * k));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a.1 + &b.1 * k;
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), c * k)));
        Poly { vars: self.vars.clone(), terms: out }
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.vars);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Poly::from_map(&self.vars, acc)
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.vars);
        }
        // multiplication by a monomial preserves the canonical order
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(x, c)| (x.mul(m), c * k)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.vars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Poly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(var);
            (e > 0).then(|| {
                let (rest, _) = m.split_var(var);
                (rest.mul(&Monomial::var_pow(var, e - 1)), c * Rational::from_integer(e.into()))
            })
        });
        Poly::from_terms(&self.vars, terms)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len(), "point has wrong dimension");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, e) in m.iter() {
                v *= num_traits::pow(point[i].clone(), e as usize);
            }
            total += v;
        }
        total
    }

    /// Replaces variable `i` by `images[i]`; all images share one target
    /// variable set.
    pub fn substitute(&self, images: &[Poly], target: &Arc<VarSet>) -> Poly {
        assert_eq!(images.len(), self.vars.len(), "one image per variable required");
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, e) in m.iter() {
                let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e));
                term = &term * p;
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Moves the polynomial into another variable set via an index map.
    pub fn reindex(&self, target: &Arc<VarSet>, map: &[usize]) -> Poly {
        Poly::from_terms(target, self.terms.iter().map(|(m, c)| (m.reindex(map), c.clone())))
    }

    /// Leading coefficient normalized to 1 under the canonical order.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly> {
    a.checked_arith(b, op)
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.checked_arith(rhs, $op).expect("polynomials over different variable sets")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, ArithOp::Add);
impl_binop!(Sub, sub, ArithOp::Sub);
impl_binop!(Mul, mul, ArithOp::Mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn fmt_monomial(m: &Monomial, vars: &VarSet) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|(i, e)| if e == 1 { vars.name(i).to_string() } else { format!("{}^{}", vars.name(i), e) })
        .collect();
    parts.join("*")
}

/// Writes terms in the given sequence using the expression grammar accepted
/// by the parser.
pub(crate) fn fmt_terms<'a>(
    f: &mut impl fmt::Write,
    terms: impl Iterator<Item = &'a (Monomial, Rational)>,
    vars: &VarSet,
) -> fmt::Result {
    let mut first = true;
    for (m, c) in terms {
        let negative = c.is_negative();
        let abs = c.abs();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        if m.is_one() {
            f.write_str(&fmt_rational(&abs))?;
        } else if abs.is_one() {
            f.write_str(&fmt_monomial(m, vars))?;
        } else {
            write!(f, "{}*{}", fmt_rational(&abs), fmt_monomial(m, vars))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl Poly {
    /// Renders the terms in descending order under `order`.
    pub fn to_string_in(&self, order: &MonomialOrder) -> String {
        let mut sorted: Vec<&(Monomial, Rational)> = self.terms.iter().collect();
        sorted.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut s = String::new();
        fmt_terms(&mut s, sorted.into_iter(), &self.vars).expect("writing to a String");
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter(), &self.vars)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
