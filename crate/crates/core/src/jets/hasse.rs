use std::collections::HashMap;

use num_traits::One;

use super::scheme::AffineScheme;
use super::space::JetSpace;
use crate::error::{Error, Result};
use crate::polyalg::{Monomial, Poly, Rational};

/// All Hasse–Schmidt derivatives `D_0(f), .., D_n(f)` into the jet space of
/// level `n` (or higher).
///
/// `D_p(x_i) = x_i^{(p)}` and `D_p(gh) = sum_{a+b=p} D_a(g) D_b(h)`; the
/// derivatives of a power are built by peeling one factor at a time.
pub fn hs_derivatives(f: &Poly, n: usize, space: &JetSpace) -> Result<Vec<Poly>> {
    if !f.same_vars(&Poly::zero(space.ambient())) {
        return Err(Error::VarsetMismatch);
    }
    if n > space.level() {
        return Err(Error::InvalidInput(format!("order {n} exceeds jet level {}", space.level())));
    }
    let jv = space.vars();
    let mut powers: HashMap<(usize, u32), Vec<Poly>> = HashMap::new();
    let mut out = vec![Poly::zero(jv); n + 1];
    for (m, c) in f.terms() {
        let mut acc: Vec<Poly> = (0..=n)
            .map(|p| if p == 0 { Poly::constant(jv, c.clone()) } else { Poly::zero(jv) })
            .collect();
        for (i, e) in m.iter() {
            let seq = power_derivatives(i, e, n, space, &mut powers);
            acc = convolve(&acc, seq, n, jv);
        }
        for (o, a) in out.iter_mut().zip(acc) {
            *o = &*o + &a;
        }
    }
    Ok(out)
}

/// `D_p(f)` in the jet space of level `p`.
pub fn hs_derivative(f: &Poly, p: usize) -> Result<(Poly, JetSpace)> {
    let space = JetSpace::new(f.vars(), p)?;
    let mut all = hs_derivatives(f, p, &space)?;
    Ok((all.pop().expect("p + 1 derivatives"), space))
}

fn power_derivatives<'a>(
    i: usize,
    e: u32,
    n: usize,
    space: &JetSpace,
    memo: &'a mut HashMap<(usize, u32), Vec<Poly>>,
) -> &'a Vec<Poly> {
    if !memo.contains_key(&(i, e)) {
        let jv = space.vars();
        let base: Vec<Poly> =
            (0..=n).map(|p| Poly::monomial(jv, Monomial::var(space.var(i, p)), Rational::one())).collect();
        let seq = if e == 1 {
            base
        } else {
            let lower = power_derivatives(i, e - 1, n, space, memo).clone();
            convolve(&base, &lower, n, jv)
        };
        memo.insert((i, e), seq);
    }
    &memo[&(i, e)]
}

fn convolve(a: &[Poly], b: &[Poly], n: usize, vars: &std::sync::Arc<crate::polyalg::VarSet>) -> Vec<Poly> {
    (0..=n)
        .map(|p| {
            (0..=p).fold(Poly::zero(vars), |acc, k| {
                if a[k].is_zero() || b[p - k].is_zero() {
                    acc
                } else {
                    &acc + &(&a[k] * &b[p - k])
                }
            })
        })
        .collect()
}

/// Defining ideal of the jet scheme `X_n`: all `D_p(g)` for generators `g`
/// and `p <= n`, listed generator-major.
pub fn jet_ideal(x: &AffineScheme, n: usize) -> Result<(Vec<Poly>, JetSpace)> {
    let space = JetSpace::new(x.vars(), n)?;
    let mut out = Vec::with_capacity(x.generators().len() * (n + 1));
    for g in x.generators() {
        out.extend(hs_derivatives(g, n, &space)?);
    }
    Ok((out, space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, VarSet};

    #[test]
    fn leibniz_on_a_product() {
        let amb = VarSet::from_names(&["x", "y"]).unwrap();
        let f = parse_poly("x*y", &amb).unwrap();
        let (d1, space) = hs_derivative(&f, 1).unwrap();
        assert_eq!(d1, parse_poly("x_0*y_1 + x_1*y_0", space.vars()).unwrap());
    }

    #[test]
    fn order_zero_is_substitution() {
        let amb = VarSet::from_names(&["x0", "x1", "x2", "x3"]).unwrap();
        let f = parse_poly("x0*x3 + x1*x2", &amb).unwrap();
        let (d0, space) = hs_derivative(&f, 0).unwrap();
        assert_eq!(d0, parse_poly("x0_0*x3_0 + x1_0*x2_0", space.vars()).unwrap());
    }

    #[test]
    fn second_derivative_of_square() {
        let amb = VarSet::from_names(&["x"]).unwrap();
        let f = parse_poly("x^2", &amb).unwrap();
        let (d2, space) = hs_derivative(&f, 2).unwrap();
        assert_eq!(d2, parse_poly("2*x_0*x_2 + x_1^2", space.vars()).unwrap());
    }

    #[test]
    fn jet_ideal_of_a_line() {
        let amb = VarSet::from_names(&["x", "y"]).unwrap();
        let x = AffineScheme::new(&amb, vec![parse_poly("y", &amb).unwrap()], None).unwrap();
        let (ideal, space) = jet_ideal(&x, 1).unwrap();
        let names: Vec<String> = ideal.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["y_0", "y_1"]);
        assert_eq!(space.nvars(), 4);
    }

    #[test]
    fn constants_only_at_order_zero() {
        let amb = VarSet::from_names(&["x"]).unwrap();
        let f = parse_poly("x + 5", &amb).unwrap();
        let space = JetSpace::new(&amb, 2).unwrap();
        let ds = hs_derivatives(&f, 2, &space).unwrap();
        assert_eq!(ds[0].to_string(), "x_0 + 5");
        assert_eq!(ds[1].to_string(), "x_1");
        assert_eq!(ds[2].to_string(), "x_2");
    }
}
