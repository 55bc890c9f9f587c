#![allow(dead_code)]

use std::sync::Arc;

use arcspace::jets::{AffineScheme, FormalArc};
use arcspace::polyalg::{q, Monomial, Poly, Rational, VarSet};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random polynomial with up to `terms` terms of degree `<= degree` and
/// nonzero coefficients in `[-bound, bound]`; `min_degree` bounds the
/// order from below.
pub fn random_poly(
    vars: &Arc<VarSet>,
    rng: &mut ChaCha8Rng,
    terms: usize,
    min_degree: u32,
    degree: u32,
    bound: i64,
) -> Poly {
    let n = vars.len();
    let mut out = Poly::zero(vars);
    for _ in 0..terms {
        let total = rng.gen_range(min_degree..=degree);
        let mut exps = vec![0u32; n];
        for _ in 0..total {
            exps[rng.gen_range(0..n)] += 1;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-bound..=bound);
        }
        out = &out + &Poly::monomial(vars, Monomial::from_dense(&exps), q(c));
    }
    out
}

/// Strategy for polynomials in `nvars` variables.
pub fn poly_strategy(
    vars: Arc<VarSet>,
    terms: usize,
    min_degree: u32,
    degree: u32,
) -> impl Strategy<Value = Poly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0u32..=degree, n), -6i64..=6), 1..=terms).prop_map(
        move |raw| {
            raw.into_iter().fold(Poly::zero(&vars), |acc, (mut exps, c)| {
                while exps.iter().sum::<u32>() > degree {
                    let i = exps.iter().position(|&e| e > 0).expect("positive degree");
                    exps[i] -= 1;
                }
                while exps.iter().sum::<u32>() < min_degree {
                    exps[0] += 1;
                }
                &acc + &Poly::monomial(&vars, Monomial::from_dense(&exps), q(c))
            })
        },
    )
}

pub fn quadric() -> AffineScheme {
    AffineScheme::parse(&["x0", "x1", "x2", "x3"], &["x0*x3 + x1*x2"], Some(3)).unwrap()
}

/// Two quadrics through the line `x1 = x2 = x3 = 0`.
pub fn two_quadrics() -> AffineScheme {
    AffineScheme::parse(
        &["x0", "x1", "x2", "x3"],
        &["x0*x1 + x2^2 - x1*x3 + 2*x3^2", "x0*x2 + x1*x3 - x2^2"],
        Some(2),
    )
    .unwrap()
}

pub fn line_arc(power: usize) -> FormalArc {
    let tm = format!("t^{power}");
    FormalArc::parse(&[tm.as_str(), "0", "0", "0"], None).unwrap()
}

pub fn rationals(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&c| q(c)).collect()
}
