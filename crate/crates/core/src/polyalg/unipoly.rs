use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::poly::Poly;
use super::var::VarSet;
use crate::error::{Error, Result};

/// Polynomial in `t` whose coefficients are polynomials over `vars`.
/// `coeffs[k]` is the coefficient of `t^k`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct TPoly {
    vars: Arc<VarSet>,
    coeffs: Vec<Poly>,
}

impl TPoly {
    pub fn new(vars: &Arc<VarSet>, coeffs: Vec<Poly>) -> Self {
        let mut p = TPoly { vars: vars.clone(), coeffs };
        p.trim();
        p
    }

    pub fn zero(vars: &Arc<VarSet>) -> Self {
        TPoly::new(vars, Vec::new())
    }

    pub fn constant(c: Poly) -> Self {
        let vars = c.vars().clone();
        TPoly::new(&vars, vec![c])
    }

    /// `t^k`.
    pub fn t_pow(vars: &Arc<VarSet>, k: usize) -> Self {
        let mut coeffs = vec![Poly::zero(vars); k];
        coeffs.push(Poly::one(vars));
        TPoly::new(vars, coeffs)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Poly::zero(&self.vars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.coeffs.last(), Some(c) if c.is_constant() && c.constant_term().is_one())
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        TPoly::new(&self.vars, (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        TPoly::new(&self.vars, (0..len).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero(&self.vars);
        }
        let mut coeffs = vec![Poly::zero(&self.vars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        TPoly::new(&self.vars, coeffs)
    }

    pub fn scale(&self, c: &Poly) -> TPoly {
        TPoly::new(&self.vars, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Division with remainder by a monic divisor: `self = quot * q + rem`
    /// with `deg rem < deg q`.
    pub fn div_monic(&self, q: &TPoly) -> Result<(TPoly, TPoly)> {
        if !q.is_monic() {
            return Err(Error::NotMonic);
        }
        if !Arc::ptr_eq(&self.vars, &q.vars) && self.vars != q.vars {
            return Err(Error::VarsetMismatch);
        }
        let dq = q.degree().expect("monic divisor is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((TPoly::zero(&self.vars), self.clone()));
        }
        let mut quot = vec![Poly::zero(&self.vars); rem.len() - dq];
        for k in (dq..rem.len()).rev() {
            let lead = std::mem::replace(&mut rem[k], Poly::zero(&self.vars));
            if lead.is_zero() {
                continue;
            }
            for (j, qc) in q.coeffs[..dq].iter().enumerate() {
                if !qc.is_zero() {
                    rem[k - dq + j] = &rem[k - dq + j] - &(&lead * qc);
                }
            }
            quot[k - dq] = lead;
        }
        rem.truncate(dq);
        Ok((TPoly::new(&self.vars, quot), TPoly::new(&self.vars, rem)))
    }

    pub fn rem_monic(&self, q: &TPoly) -> Result<TPoly> {
        Ok(self.div_monic(q)?.1)
    }

    /// Substitutes values for the coefficient variables.
    pub fn evaluate_coeffs(&self, point: &[super::Rational]) -> Vec<super::Rational> {
        self.coeffs.iter().map(|c| c.evaluate(point)).collect()
    }
}

pub fn div_monic_t(g: &TPoly, q: &TPoly) -> Result<(TPoly, TPoly)> {
    g.div_monic(q)
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*t^{k}"))
            .collect();
        write!(f, "TPoly[{}]", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}
