mod common;

use arcspace::jets::{eval_along_arc, hs_derivatives, jet_ideal, truncate_arc, FormalArc, JetSpace};
use arcspace::polyalg::{q, Monomial, OrdResult, Poly, Rational, TruncSeries, VarId, VarSet};
use common::{poly_strategy, random_poly, rng};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// `D_p(f)` as the `t^p` coefficient of `f(sum_j x^{(j)} s^j)`, computed by
/// plain substitution in the ring of jet variables and `s`.
fn coefficient_extraction(f: &Poly, space: &JetSpace, p: usize) -> Poly {
    let jet = space.vars();
    let mut ids: Vec<VarId> = jet.vars().to_vec();
    ids.push(VarId::plain("s"));
    let ring = VarSet::new(ids).unwrap();
    let s = jet.len();
    let images: Vec<Poly> = (0..space.ambient().len())
        .map(|i| {
            (0..=space.level()).fold(Poly::zero(&ring), |acc, j| {
                let m = Monomial::var(space.var(i, j)).mul(&Monomial::var_pow(s, j as u32));
                &acc + &Poly::monomial(&ring, m, Rational::one())
            })
        })
        .collect();
    let composite = f.substitute(&images, &ring);
    Poly::from_terms(
        jet,
        composite.terms().iter().filter_map(|(m, c)| {
            let (rest, e) = m.split_var(s);
            (e as usize == p).then(|| (rest, c.clone()))
        }),
    )
}

#[test]
fn derivatives_match_coefficient_extraction() {
    let amb = VarSet::from_names(&["x", "y", "z"]).unwrap();
    let mut r = rng(11);
    let space = JetSpace::new(&amb, 6).unwrap();
    for _ in 0..24 {
        let f = random_poly(&amb, &mut r, 4, 0, 4, 9);
        let ds = hs_derivatives(&f, 6, &space).unwrap();
        for (p, d) in ds.iter().enumerate() {
            assert_eq!(d, &coefficient_extraction(&f, &space, p), "f = {f}, p = {p}");
        }
    }
}

#[test]
fn chain_rule() {
    // ∂D_p(g)/∂x_i^{(k)} = D_{p-k}(∂g/∂x_i)
    let amb = VarSet::from_names(&["x", "y"]).unwrap();
    let mut r = rng(12);
    let space = JetSpace::new(&amb, 5).unwrap();
    for _ in 0..12 {
        let g = random_poly(&amb, &mut r, 4, 0, 4, 5);
        let dg = hs_derivatives(&g, 5, &space).unwrap();
        for i in 0..amb.len() {
            let dpartial = hs_derivatives(&g.partial_derivative(i), 5, &space).unwrap();
            for p in 0..=5 {
                for k in 0..=5 {
                    let lhs = dg[p].partial_derivative(space.var(i, k));
                    let rhs = if k <= p { dpartial[p - k].clone() } else { Poly::zero(space.vars()) };
                    assert_eq!(lhs, rhs, "g = {g}, p = {p}, i = {i}, k = {k}");
                }
            }
        }
    }
}

#[test]
fn weighted_homogeneity() {
    // with weight j on x^{(j)}, D_p(g) is homogeneous of weight p
    let amb = VarSet::from_names(&["x", "y", "z"]).unwrap();
    let mut r = rng(13);
    let space = JetSpace::new(&amb, 6).unwrap();
    let lambda = q(-2);
    for _ in 0..20 {
        let g = random_poly(&amb, &mut r, 5, 0, 3, 7);
        for (p, d) in hs_derivatives(&g, 6, &space).unwrap().iter().enumerate() {
            for (m, _) in d.terms() {
                let weight: usize = m.iter().map(|(v, e)| space.split(v).1 * e as usize).sum();
                assert_eq!(weight, p);
            }
            let point: Vec<Rational> = (0..space.nvars()).map(|v| q(v as i64 + 1)).collect();
            let scaled: Vec<Rational> = (0..space.nvars())
                .map(|v| &point[v] * num_traits::pow(lambda.clone(), space.split(v).1))
                .collect();
            assert_eq!(d.evaluate(&scaled), d.evaluate(&point) * num_traits::pow(lambda.clone(), p));
        }
    }
}

#[test]
fn jet_ideal_vanishes_on_truncated_arcs() {
    // (x, y) = (t^2, t^3) lies on the cusp, so its jets lie on every X_n
    let x = arcspace::jets::AffineScheme::parse(&["x", "y"], &["y^2 - x^3"], None).unwrap();
    let a = FormalArc::parse(&["t^2", "t^3"], None).unwrap();
    for n in 0..7 {
        let (ideal, _) = jet_ideal(&x, n).unwrap();
        let point = truncate_arc(&a, x.vars(), n).unwrap();
        assert!(ideal.iter().all(|g| g.evaluate(point.coords()).is_zero()));
    }
    let off = FormalArc::parse(&["t^2", "t^3 + t^5"], None).unwrap();
    let point = truncate_arc(&off, x.vars(), 7).unwrap();
    let (ideal, _) = jet_ideal(&x, 7).unwrap();
    // y^2 - x^3 = 2 t^8 + t^10: first nonzero at D_8
    assert!(ideal.iter().all(|g| g.evaluate(point.coords()).is_zero()));
    let point8 = truncate_arc(&off, x.vars(), 8).unwrap();
    let (ideal8, _) = jet_ideal(&x, 8).unwrap();
    assert_eq!(ideal8.last().unwrap().evaluate(point8.coords()), q(2));
}

fn arc_strategy() -> impl Strategy<Value = FormalArc> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, 0..5), 2).prop_map(|rows| {
        FormalArc::new(
            rows.into_iter().map(|r| TruncSeries::exact(r.into_iter().map(q).collect())).collect(),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_a_valuation(
        f in poly_strategy(VarSet::from_names(&["x", "y"]).unwrap(), 4, 0, 3),
        g in poly_strategy(VarSet::from_names(&["x", "y"]).unwrap(), 4, 0, 3),
        a in arc_strategy(),
    ) {
        let vars = VarSet::from_names(&["x", "y"]).unwrap();
        let (f, g) = (f.reindex(&vars, &[0, 1]), g.reindex(&vars, &[0, 1]));
        let of = eval_along_arc(&f, &a).unwrap().ord();
        let og = eval_along_arc(&g, &a).unwrap().ord();
        let ofg = eval_along_arc(&(&f * &g), &a).unwrap().ord();
        match (of, og) {
            (OrdResult::Exact(i), OrdResult::Exact(j)) => prop_assert_eq!(ofg, OrdResult::Exact(i + j)),
            _ => prop_assert_eq!(ofg, OrdResult::Infinity),
        }
        let sum = eval_along_arc(&(&f + &g), &a).unwrap().ord();
        prop_assert!(sum >= of.min(og));
    }

    #[test]
    fn derivatives_evaluate_to_arc_coefficients(
        f in poly_strategy(VarSet::from_names(&["x", "y"]).unwrap(), 4, 0, 3),
        a in arc_strategy(),
    ) {
        let vars = VarSet::from_names(&["x", "y"]).unwrap();
        let f = f.reindex(&vars, &[0, 1]);
        let space = JetSpace::new(&vars, 5).unwrap();
        let point = truncate_arc(&a, &vars, 5).unwrap();
        let series = eval_along_arc(&f, &a).unwrap();
        for (p, d) in hs_derivatives(&f, 5, &space).unwrap().iter().enumerate() {
            prop_assert_eq!(d.evaluate(point.coords()), series.coeff(p).unwrap());
        }
    }
}

#[test]
fn random_coefficient_ranges_are_exercised() {
    // the generator produces negative, positive and higher-degree terms
    let amb = VarSet::from_names(&["x"]).unwrap();
    let mut r = rng(14);
    let polys: Vec<Poly> = (0..20).map(|_| random_poly(&amb, &mut r, 3, 0, 4, 5)).collect();
    assert!(polys.iter().any(|p| p.total_degree() >= Some(3)));
    assert!(polys.iter().flat_map(|p| p.terms()).any(|(_, c)| c < &Rational::zero()));
}
