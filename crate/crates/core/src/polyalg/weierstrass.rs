use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use super::Rational;
use crate::error::{Error, Result};

/// Ideal of monomials discarded during a truncated division: those whose
/// degree in the non-`y` variables reaches `x_degree`, and, when set, those
/// whose `y`-exponent reaches `y_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub y: usize,
    pub x_degree: u32,
    pub y_degree: Option<u32>,
}

impl Truncation {
    pub fn keeps(&self, m: &Monomial) -> bool {
        let ye = m.exponent(self.y);
        m.degree() - ye < self.x_degree && self.y_degree.is_none_or(|b| ye < b)
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        Poly::from_terms(p.vars(), p.terms().iter().filter(|(m, _)| self.keeps(m)).cloned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassDivision {
    pub quotient: Poly,
    pub remainder: Poly,
    /// Order of `f` along the `y`-axis.
    pub order: u32,
    pub truncation: Truncation,
}

/// Order of `f(0, .., 0, y)` in `y`, or `None` if that restriction vanishes.
pub fn regularity_order(f: &Poly, y: usize) -> Option<u32> {
    f.terms()
        .iter()
        .filter(|(m, _)| m.support().all(|v| v == y))
        .map(|(m, _)| m.degree())
        .min()
}

/// Weierstrass division `g = q f + r` with `deg_y r < d`, computed modulo
/// non-`y` degree `trunc`.
///
/// When `f(0, y) = c y^d` the computation is polynomial in `y` and exact up to
/// the `x`-truncation. Otherwise the unit `f(0, y) / y^d` is inverted as a
/// series and `y`-degrees are cut at `trunc + d + deg_y g`; the cut is
/// recorded in the returned truncation.
pub fn weierstrass_divide(g: &Poly, f: &Poly, y: usize, trunc: u32) -> Result<WeierstrassDivision> {
    if !g.same_vars(f) {
        return Err(Error::VarsetMismatch);
    }
    let name = f.vars().name(y).to_string();
    let d = regularity_order(f, y).ok_or(Error::NotRegular { var: name })?;
    let on_axis: Vec<(u32, Rational)> = f
        .terms()
        .iter()
        .filter(|(m, _)| m.support().all(|v| v == y))
        .map(|(m, c)| (m.degree() - d, c.clone()))
        .collect();
    let pure = on_axis.len() == 1;
    let truncation = Truncation {
        y,
        x_degree: trunc,
        y_degree: (!pure).then(|| trunc + d + g.degree_in(y)),
    };
    let vars = f.vars();

    // inverse of the unit u(y) = f(0, y) / y^d, as a truncated series
    let u_inv = {
        let bound = truncation.y_degree.unwrap_or(1) as usize;
        let mut u = vec![Rational::zero(); bound.max(1)];
        for (k, c) in &on_axis {
            if (*k as usize) < u.len() {
                u[*k as usize] = c.clone();
            }
        }
        let mut inv = vec![Rational::zero(); u.len()];
        inv[0] = u[0].recip();
        for n in 1..u.len() {
            let mut s = Rational::zero();
            for k in 1..=n {
                s += &u[k] * &inv[n - k];
            }
            inv[n] = -(s * &inv[0]);
        }
        Poly::from_terms(
            vars,
            inv.into_iter().enumerate().map(|(k, c)| (Monomial::var_pow(y, k as u32), c)),
        )
    };
    let u_inv = truncation.apply(&u_inv);
    let y_d = Monomial::var_pow(y, d);

    let mut quotient = Poly::zero(vars);
    let mut remainder = Poly::zero(vars);
    let mut rho = truncation.apply(g);
    for _ in 0..=trunc + 1 {
        let (mut high, mut low) = (Vec::new(), Vec::new());
        for (m, c) in rho.terms() {
            match y_d.quotient_of(m) {
                Some(rest) => high.push((rest, c.clone())),
                None => low.push((m.clone(), c.clone())),
            }
        }
        remainder = &remainder + &Poly::from_terms(vars, low);
        if high.is_empty() {
            return Ok(WeierstrassDivision { quotient, remainder, order: d, truncation });
        }
        let a = Poly::from_terms(vars, high);
        let delta = truncation.apply(&(&a * &u_inv));
        quotient = &quotient + &delta;
        rho = truncation.apply(&(&a.mul_monomial(&y_d, &Rational::one()) - &(&delta * f)));
    }
    Err(Error::InternalInconsistency("Weierstrass division did not converge".into()))
}

/// Coordinate change `x_i -> x_i + y^{a_i}` on finitely many variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularization {
    pub y: usize,
    pub shifts: Vec<(usize, u32)>,
}

impl Regularization {
    pub fn is_identity(&self) -> bool {
        self.shifts.is_empty()
    }

    fn substitute(&self, p: &Poly, sign: i64) -> Poly {
        let vars = p.vars();
        let images: Vec<Poly> = (0..vars.len())
            .map(|i| {
                let xi = Poly::var(vars, i);
                match self.shifts.iter().find(|(v, _)| *v == i) {
                    Some(&(_, a)) => {
                        &xi + &Poly::monomial(vars, Monomial::var_pow(self.y, a), Rational::from_integer(sign.into()))
                    }
                    None => xi,
                }
            })
            .collect();
        p.substitute(&images, vars)
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        self.substitute(p, 1)
    }

    pub fn invert(&self, p: &Poly) -> Poly {
        self.substitute(p, -1)
    }
}

/// Finds a substitution making `f` regular in `y`: the identity if possible,
/// then shifts `y^1, y^2, ..` in declaration order, then exponents `K^i` with
/// `K = deg f + 1`, which always succeed.
pub fn regularize(f: &Poly, y: usize) -> Result<Regularization> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot regularize the zero polynomial".into()));
    }
    let identity = Regularization { y, shifts: Vec::new() };
    if regularity_order(f, y).is_some() {
        return Ok(identity);
    }
    let others: Vec<usize> = f.support().into_iter().filter(|&v| v != y).collect();
    let k = f.total_degree().unwrap_or(0) + 1;
    let candidates = [
        others.iter().enumerate().map(|(r, &v)| (v, r as u32 + 1)).collect::<Vec<_>>(),
        others.iter().enumerate().map(|(r, &v)| (v, k.pow(r as u32 + 1))).collect(),
    ];
    for shifts in candidates {
        let reg = Regularization { y, shifts };
        if regularity_order(&reg.apply(f), y).is_some() {
            return Ok(reg);
        }
    }
    Err(Error::InternalInconsistency("regularizing substitution not found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, VarSet};

    #[test]
    fn exact_division_example() {
        let v = VarSet::from_names(&["x", "y"]).unwrap();
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let res = weierstrass_divide(&p("y^3"), &p("y^2 - x"), 1, 6).unwrap();
        assert_eq!(res.quotient, p("y"));
        assert_eq!(res.remainder, p("x*y"));
        assert_eq!(res.order, 2);
    }

    #[test]
    fn dividing_by_itself_and_by_y() {
        let v = VarSet::from_names(&["x", "y"]).unwrap();
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let f = p("y^2 - x + x*y");
        let res = weierstrass_divide(&f, &f, 1, 6).unwrap();
        assert_eq!(res.quotient, p("1"));
        assert!(res.remainder.is_zero());

        let g = p("x^2*y^3 + 3*x - y + 7");
        let res = weierstrass_divide(&g, &p("y"), 1, 6).unwrap();
        assert_eq!(res.remainder, p("3*x + 7"));
        assert_eq!(res.quotient, p("x^2*y^2 - 1"));
    }

    #[test]
    fn not_regular() {
        let v = VarSet::from_names(&["x", "y"]).unwrap();
        let f = parse_poly("x*y", &v).unwrap();
        assert!(matches!(weierstrass_divide(&f, &f, 1, 4), Err(Error::NotRegular { .. })));
    }

    #[test]
    fn non_monomial_axis_restriction() {
        let v = VarSet::from_names(&["x", "y"]).unwrap();
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let f = p("y - y^2 + x");
        let g = p("y^2 + x*y + 1");
        let res = weierstrass_divide(&g, &f, 1, 5).unwrap();
        assert!(res.truncation.y_degree.is_some());
        assert_eq!(res.remainder.degree_in(1), 0);
        let check = &(&(&res.quotient * &f) + &res.remainder) - &g;
        assert!(res.truncation.apply(&check).is_zero());
    }

    #[test]
    fn regularize_examples() {
        let v = VarSet::from_names(&["x", "y"]).unwrap();
        let p = |s: &str| parse_poly(s, &v).unwrap();
        assert!(regularize(&p("y + x"), 1).unwrap().is_identity());
        let reg = regularize(&p("x"), 1).unwrap();
        assert_eq!(reg.shifts, vec![(0, 1)]);
        assert_eq!(regularity_order(&reg.apply(&p("x")), 1), Some(1));

        let w = VarSet::from_names(&["x1", "x2", "y"]).unwrap();
        let f = parse_poly("x1*x2", &w).unwrap();
        let reg = regularize(&f, 2).unwrap();
        assert_eq!(reg.shifts, vec![(0, 1), (1, 2)]);
        assert_eq!(regularity_order(&reg.apply(&f), 2), Some(3));
        assert_eq!(reg.invert(&reg.apply(&f)), f);
    }

    #[test]
    fn regularize_falls_back_when_shifts_cancel() {
        let v = VarSet::from_names(&["x1", "x2", "y"]).unwrap();
        let f = parse_poly("x1^2 - x2", &v).unwrap();
        let reg = regularize(&f, 2).unwrap();
        let g = reg.apply(&f);
        assert!(regularity_order(&g, 2).is_some());
        assert_eq!(reg.invert(&g), f);
    }
}
