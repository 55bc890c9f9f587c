use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::space::JetSpace;
use crate::error::{Error, Result};
use crate::polyalg::{parse_poly, OrdResult, Poly, Rational, TruncSeries, VarSet};

/// Default cap for adaptive precision doubling in contact-order searches.
pub const DEFAULT_PRECISION_CAP: usize = 64;
const INITIAL_PRECISION: usize = 8;

/// A `Q`-rational arc: one power series in `t` per ambient coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalArc {
    components: Vec<TruncSeries>,
}

impl FormalArc {
    pub fn new(components: Vec<TruncSeries>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidInput("an arc needs at least one component".into()));
        }
        if components.iter().any(|c| c.precision() == Some(0)) {
            return Err(Error::InvalidInput("arc precision must be at least 1".into()));
        }
        Ok(FormalArc { components })
    }

    /// Parses each entry as a polynomial in `t`; without a precision the
    /// components are exact polynomials.
    pub fn parse<S: AsRef<str>>(entries: &[S], precision: Option<usize>) -> Result<Self> {
        let tv = VarSet::arc_parameter();
        let comps = entries
            .iter()
            .map(|e| TruncSeries::from_t_poly(&parse_poly(e.as_ref(), &tv)?, precision))
            .collect::<Result<Vec<_>>>()?;
        FormalArc::new(comps)
    }

    /// Exact polynomial arc from integer coefficient lists.
    pub fn from_int_coeffs(rows: &[&[i64]]) -> Result<Self> {
        FormalArc::new(
            rows.iter()
                .map(|r| TruncSeries::exact(r.iter().map(|&c| Rational::from_integer(c.into())).collect()))
                .collect(),
        )
    }

    pub fn components(&self) -> &[TruncSeries] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Smallest component precision; `None` when every component is exact.
    pub fn precision(&self) -> Option<usize> {
        self.components.iter().filter_map(TruncSeries::precision).min()
    }

    pub fn is_exact(&self) -> bool {
        self.precision().is_none()
    }

    /// Coefficient of `t^j` in component `i`.
    pub fn coeff(&self, i: usize, j: usize) -> Result<Rational> {
        self.components[i].coeff(j).ok_or(Error::InsufficientPrecision {
            needed: j + 1,
            have: self.components[i].precision().unwrap_or(0),
        })
    }

    /// The special point `α(0)`.
    pub fn special_point(&self) -> Vec<Rational> {
        self.components.iter().map(|c| c.coeff(0).unwrap_or_else(Rational::zero)).collect()
    }

    /// Every component reduced modulo `t^n`.
    pub fn truncated(&self, n: usize) -> FormalArc {
        FormalArc { components: self.components.iter().map(|c| c.truncate(n)).collect() }
    }

    /// Image under the linear map `x ↦ M x`.
    pub fn linear_image(&self, m: &[Vec<Rational>]) -> Result<FormalArc> {
        if m.iter().any(|r| r.len() != self.dim()) {
            return Err(Error::InvalidInput("matrix width must match arc dimension".into()));
        }
        let comps = m
            .iter()
            .map(|row| {
                row.iter().zip(&self.components).fold(TruncSeries::zero_exact(), |acc, (c, s)| {
                    if c.is_zero() {
                        acc
                    } else {
                        acc.add(&s.scale(c))
                    }
                })
            })
            .collect();
        FormalArc::new(comps)
    }
}

/// The truncation `α_n` of an arc: coordinates `x_i^{(j)}` for `j <= n`,
/// indexed as in [`JetSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetPoint {
    space: JetSpace,
    coords: Vec<Rational>,
}

impl JetPoint {
    pub fn level(&self) -> usize {
        self.space.level()
    }

    pub fn space(&self) -> &JetSpace {
        &self.space
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize, j: usize) -> &Rational {
        &self.coords[self.space.var(i, j)]
    }

    pub fn by_name(&self) -> Vec<(String, Rational)> {
        self.space.vars().names().iter().cloned().zip(self.coords.iter().cloned()).collect()
    }
}

pub fn truncate_arc(alpha: &FormalArc, ambient: &Arc<VarSet>, n: usize) -> Result<JetPoint> {
    if ambient.len() != alpha.dim() {
        return Err(Error::VarsetMismatch);
    }
    let space = JetSpace::new(ambient, n)?;
    let mut coords = vec![Rational::zero(); space.nvars()];
    for i in 0..alpha.dim() {
        for j in 0..=n {
            coords[space.var(i, j)] = alpha.coeff(i, j)?;
        }
    }
    Ok(JetPoint { space, coords })
}

/// `f(α(t))`, to the arc's precision.
pub fn eval_along_arc(f: &Poly, alpha: &FormalArc) -> Result<TruncSeries> {
    if f.vars().len() != alpha.dim() {
        return Err(Error::VarsetMismatch);
    }
    let mut powers: HashMap<(usize, u32), TruncSeries> = HashMap::new();
    let mut acc = match alpha.precision() {
        None => TruncSeries::zero_exact(),
        Some(n) => TruncSeries::truncated(Vec::new(), n),
    };
    for (m, c) in f.terms() {
        let mut term = TruncSeries::constant(c.clone());
        for (i, e) in m.iter() {
            let p = power(alpha, i, e, &mut powers);
            term = term.mul(p);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn power<'a>(alpha: &FormalArc, i: usize, e: u32, memo: &'a mut HashMap<(usize, u32), TruncSeries>) -> &'a TruncSeries {
    if !memo.contains_key(&(i, e)) {
        let s = if e == 1 {
            alpha.components[i].clone()
        } else {
            let lower = power(alpha, i, e - 1, memo).clone();
            lower.mul(&alpha.components[i])
        };
        memo.insert((i, e), s);
    }
    &memo[&(i, e)]
}

/// Minimum contact order over the generators of an ideal.
///
/// Exact arcs are evaluated modulo `t^P` for `P = 8, 16, ..` up to `cap`;
/// if every generator still vanishes there, the exact composite decides
/// between a finite order and `Infinity`. Truncated arcs are evaluated once
/// at their own precision.
pub fn ord_along_arc(ideal: &[Poly], alpha: &FormalArc, cap: usize) -> Result<OrdResult> {
    if let Some(g) = ideal.first() {
        if g.vars().len() != alpha.dim() {
            return Err(Error::VarsetMismatch);
        }
    }
    let fold = |arc: &FormalArc| -> Result<OrdResult> {
        ideal.iter().try_fold(OrdResult::Infinity, |acc, g| Ok(acc.min(eval_along_arc(g, arc)?.ord())))
    };
    if !alpha.is_exact() {
        return fold(alpha);
    }
    let mut p = INITIAL_PRECISION.min(cap.max(1));
    loop {
        let r = fold(&alpha.truncated(p))?;
        if !matches!(r, OrdResult::Exhausted(_)) {
            return Ok(r);
        }
        if p >= cap {
            break;
        }
        p = (2 * p).min(cap);
    }
    fold(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::q;

    fn amb4() -> Arc<VarSet> {
        VarSet::from_names(&["x0", "x1", "x2", "x3"]).unwrap()
    }

    #[test]
    fn gradient_of_quadric_along_line() {
        let v = amb4();
        let jac: Vec<Poly> = ["x3", "x0", "x2", "x1"].iter().map(|s| parse_poly(s, &v).unwrap()).collect();
        let a = FormalArc::parse(&["t", "0", "0", "0"], None).unwrap();
        assert_eq!(ord_along_arc(&jac, &a, 64).unwrap(), OrdResult::Exact(1));
        for m in 1..5 {
            let tm = format!("t^{m}");
            let a = FormalArc::parse(&[tm.as_str(), "0", "0", "0"], None).unwrap();
            assert_eq!(ord_along_arc(&jac, &a, 64).unwrap(), OrdResult::Exact(m));
        }
    }

    #[test]
    fn constants_and_zero() {
        let v = amb4();
        let a = FormalArc::parse(&["t", "0", "0", "0"], None).unwrap();
        assert_eq!(ord_along_arc(&[Poly::one(&v)], &a, 64).unwrap(), OrdResult::Exact(0));
        let f = parse_poly("x1", &v).unwrap();
        assert_eq!(ord_along_arc(std::slice::from_ref(&f), &a, 64).unwrap(), OrdResult::Infinity);
        let trunc = FormalArc::parse(&["t", "0", "0", "0"], Some(5)).unwrap();
        assert_eq!(ord_along_arc(&[f], &trunc, 64).unwrap(), OrdResult::Exhausted(5));
    }

    #[test]
    fn order_beyond_the_cap_is_still_exact() {
        let v = amb4();
        let a = FormalArc::parse(&["t^70", "0", "0", "0"], None).unwrap();
        let f = parse_poly("x0", &v).unwrap();
        assert_eq!(ord_along_arc(&[f], &a, 64).unwrap(), OrdResult::Exact(70));
    }

    #[test]
    fn evaluation() {
        let v = VarSet::from_names(&["x", "y"]).unwrap();
        let a = FormalArc::parse(&["1 + t", "t^2"], None).unwrap();
        let s = eval_along_arc(&parse_poly("x^2 - y", &v).unwrap(), &a).unwrap();
        assert_eq!(s.coeffs(), &[q(1), q(2)]);
        assert!(s.is_exact());
        let bad = parse_poly("x0", &amb4()).unwrap();
        assert!(matches!(eval_along_arc(&bad, &a), Err(Error::VarsetMismatch)));
    }

    #[test]
    fn truncation() {
        let v = amb4();
        let a = FormalArc::parse(&["t^2", "0", "0", "0"], None).unwrap();
        let p = truncate_arc(&a, &v, 2).unwrap();
        assert_eq!(p.coords().iter().filter(|c| !c.is_zero()).count(), 1);
        assert_eq!(p.coord(0, 2), &q(1));
        let p0 = truncate_arc(&a, &v, 0).unwrap();
        assert_eq!(p0.coords(), &a.special_point()[..]);
        let short = FormalArc::parse(&["t", "1", "0", "0"], Some(2)).unwrap();
        assert!(matches!(
            truncate_arc(&short, &v, 2),
            Err(Error::InsufficientPrecision { needed: 3, have: 2 })
        ));
    }
}
