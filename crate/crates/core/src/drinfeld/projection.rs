use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jets::{jacobian_ideal, ord_along_arc, AffineScheme, FormalArc};
use crate::polyalg::{linalg, OrdResult, Poly, Rational};

/// Knobs for the randomized genericity choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenericityOptions {
    /// Random integer entries are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub resample_limit: usize,
    pub precision_cap: usize,
}

impl Default for GenericityOptions {
    fn default() -> Self {
        GenericityOptions { bound: 10, resample_limit: 20, precision_cap: crate::jets::DEFAULT_PRECISION_CAP }
    }
}

/// A unimodular change of coordinates `u = M x` whose first `d` new
/// coordinates are the projection to `A^d`; the remaining `c` are the `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionMap {
    matrix: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
    d: usize,
    seed: Option<u64>,
    attempts: usize,
}

impl ProjectionMap {
    /// `matrix` must be square and invertible.
    pub fn new(matrix: Vec<Vec<Rational>>, d: usize, seed: Option<u64>, attempts: usize) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) || d > n {
            return Err(Error::InvalidInput("coordinate change must be square with d <= N".into()));
        }
        let inverse = linalg::inverse(&matrix)
            .ok_or_else(|| Error::InvalidInput("coordinate change is not invertible".into()))?;
        Ok(ProjectionMap { matrix, inverse, d, seed, attempts })
    }

    pub fn identity(n: usize, d: usize) -> Self {
        let id: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        ProjectionMap { matrix: id.clone(), inverse: id, d, seed: None, attempts: 1 }
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn inverse(&self) -> &[Vec<Rational>] {
        &self.inverse
    }

    /// The `d × N` matrix of `A^N → A^d`.
    pub fn projection_matrix(&self) -> &[Vec<Rational>] {
        &self.matrix[..self.d]
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn c(&self) -> usize {
        self.matrix.len() - self.d
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn attempts(&self) -> usize {
        self.attempts
    }

    /// `p(M^{-1} u)`, written in the same variable names.
    pub fn transform_poly(&self, p: &Poly) -> Poly {
        let vars = p.vars();
        let images: Vec<Poly> = self
            .inverse
            .iter()
            .map(|row| {
                Poly::from_terms(
                    vars,
                    row.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(j, c)| (crate::polyalg::Monomial::var(j), c.clone())),
                )
            })
            .collect();
        p.substitute(&images, vars)
    }

    pub fn transform_scheme(&self, x: &AffineScheme) -> Result<AffineScheme> {
        x.with_generators(x.generators().iter().map(|g| self.transform_poly(g)).collect())
    }

    pub fn transform_arc(&self, alpha: &FormalArc) -> Result<FormalArc> {
        alpha.linear_image(&self.matrix)
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-bound..=bound).into())
}

/// `L U` with unit triangular factors: determinant one, integer inverse.
pub fn random_unimodular(n: usize, rng: &mut ChaCha8Rng, bound: i64) -> Vec<Vec<Rational>> {
    let mut l = vec![vec![Rational::zero(); n]; n];
    let mut u = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        l[i][i] = Rational::one();
        u[i][i] = Rational::one();
        for j in 0..i {
            l[i][j] = draw(rng, bound);
        }
        for j in i + 1..n {
            u[i][j] = draw(rng, bound);
        }
    }
    linalg::mat_mul(&l, &u)
}

fn exact_order(ideal: &[Poly], alpha: &FormalArc, cap: usize) -> Result<Option<usize>> {
    Ok(ord_along_arc(ideal, alpha, cap)?.exact())
}

/// `ord_α(Fitt^d)`, required to be finite.
pub fn contact_order(x: &AffineScheme, alpha: &FormalArc, d: usize, cap: usize) -> Result<OrdResult> {
    ord_along_arc(&jacobian_ideal(x, d)?, alpha, cap)
}

/// Replaces the generators by `c = N - d` random integer combinations whose
/// Jacobian ideal has the same order along `α` as that of `X`.
pub fn ci_reduce(x: &AffineScheme, alpha: &FormalArc, d: usize, seed: u64, opts: GenericityOptions) -> Result<AffineScheme> {
    let n = x.ambient_dim();
    if d > n {
        return Err(Error::InvalidCodim { size: 0, rows: x.generators().len(), cols: n });
    }
    let c = n - d;
    let gens = x.generators();
    if gens.len() < c {
        return Err(Error::InvalidCodim { size: c, rows: gens.len(), cols: n });
    }
    let Some(target) = exact_order(&jacobian_ideal(x, d)?, alpha, opts.precision_cap)? else {
        return Err(Error::CertificateFailure {
            attempts: 0,
            reason: "the Jacobian ideal has no finite order along the arc".into(),
        });
    };
    let declared = AffineScheme::new(x.vars(), gens.to_vec(), Some(d))?;
    if c == gens.len() && c <= 1 {
        return Ok(declared);
    }
    let mut rng = rng_for(seed);
    for _ in 0..opts.resample_limit {
        let combos: Vec<Poly> = (0..c)
            .map(|_| {
                gens.iter().fold(Poly::zero(x.vars()), |acc, g| &acc + &g.scale(&draw(&mut rng, opts.bound)))
            })
            .collect();
        if combos.iter().any(Poly::is_zero) {
            continue;
        }
        let reduced = AffineScheme::new(x.vars(), combos, Some(d))?;
        if exact_order(&jacobian_ideal(&reduced, d)?, alpha, opts.precision_cap)? == Some(target) {
            return Ok(reduced);
        }
    }
    Err(Error::CertificateFailure {
        attempts: opts.resample_limit,
        reason: format!("no combination kept the Jacobian order {target}"),
    })
}

/// `det(∂p/∂y)` for generators written in projected coordinates.
pub fn y_jacobian_determinant(x: &AffineScheme, d: usize) -> Poly {
    let n = x.ambient_dim();
    let m: Vec<Vec<Poly>> =
        x.generators().iter().map(|g| (d..n).map(|j| g.partial_derivative(j)).collect()).collect();
    if m.is_empty() {
        Poly::one(x.vars())
    } else {
        crate::jets::determinant(&m)
    }
}

/// Checks `ord_α(det ∂p/∂y) = ord_α(Jac)` for an explicit coordinate change.
pub fn certify_projection(x: &AffineScheme, alpha: &FormalArc, proj: &ProjectionMap, cap: usize) -> Result<usize> {
    let d = proj.d();
    if x.generators().len() != proj.c() {
        return Err(Error::InvalidCodim { size: proj.c(), rows: x.generators().len(), cols: x.ambient_dim() });
    }
    let Some(e) = exact_order(&jacobian_ideal(x, d)?, alpha, cap)? else {
        return Err(Error::CertificateFailure {
            attempts: proj.attempts(),
            reason: "the Jacobian ideal has no finite order along the arc".into(),
        });
    };
    let moved = proj.transform_scheme(x)?;
    let arc = proj.transform_arc(alpha)?;
    let det = y_jacobian_determinant(&moved, d);
    match ord_along_arc(&[det], &arc, cap)? {
        OrdResult::Exact(k) if k == e => Ok(e),
        other => Err(Error::CertificateFailure {
            attempts: proj.attempts(),
            reason: format!("ord of det(dp/dy) is {other}, Jacobian order is {e}"),
        }),
    }
}

/// Draws unimodular coordinate changes until the certificate holds; returns
/// the map and the contact order `e`.
pub fn choose_projection(
    x: &AffineScheme,
    alpha: &FormalArc,
    seed: u64,
    opts: GenericityOptions,
) -> Result<(ProjectionMap, usize)> {
    let d = x.require_dim()?;
    let n = x.ambient_dim();
    let mut rng = rng_for(seed);
    let mut last = String::new();
    for attempt in 1..=opts.resample_limit {
        let m = random_unimodular(n, &mut rng, opts.bound);
        let proj = ProjectionMap::new(m, d, Some(seed), attempt)?;
        match certify_projection(x, alpha, &proj, opts.precision_cap) {
            Ok(e) => return Ok((proj, e)),
            Err(Error::CertificateFailure { reason, .. }) => last = reason,
            Err(other) => return Err(other),
        }
    }
    Err(Error::CertificateFailure { attempts: opts.resample_limit, reason: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::q;

    fn quadric() -> AffineScheme {
        AffineScheme::parse(&["x0", "x1", "x2", "x3"], &["x0*x3 + x1*x2"], None).unwrap()
    }

    #[test]
    fn unimodular_has_integer_inverse() {
        let mut rng = rng_for(7);
        let m = random_unimodular(4, &mut rng, 10);
        let inv = linalg::inverse(&m).unwrap();
        assert!(inv.iter().flatten().all(|c| c.is_integer()));
    }

    #[test]
    fn identity_split_certifies() {
        let x = quadric();
        let a = FormalArc::parse(&["t", "0", "0", "0"], None).unwrap();
        assert_eq!(certify_projection(&x, &a, &ProjectionMap::identity(4, 3), 64).unwrap(), 1);
        let a2 = FormalArc::parse(&["t^2", "0", "0", "0"], None).unwrap();
        assert_eq!(certify_projection(&x, &a2, &ProjectionMap::identity(4, 3), 64).unwrap(), 2);
    }

    #[test]
    fn adversarial_split_fails() {
        let x = quadric();
        let a = FormalArc::parse(&["t", "0", "0", "0"], None).unwrap();
        // y = x0: move x0 to the last slot
        let p = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]];
        let m: Vec<Vec<Rational>> = p.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        let proj = ProjectionMap::new(m, 3, None, 1).unwrap();
        assert!(matches!(certify_projection(&x, &a, &proj, 64), Err(Error::CertificateFailure { .. })));
    }

    #[test]
    fn random_projection_is_deterministic() {
        let x = AffineScheme::new(quadric().vars(), quadric().generators().to_vec(), Some(3)).unwrap();
        let a = FormalArc::parse(&["t", "0", "0", "0"], None).unwrap();
        let (p1, e1) = choose_projection(&x, &a, 42, GenericityOptions::default()).unwrap();
        let (p2, e2) = choose_projection(&x, &a, 42, GenericityOptions::default()).unwrap();
        assert_eq!((e1, e2), (1, 1));
        assert_eq!(p1, p2);
    }

    #[test]
    fn hypersurface_reduction_is_identity() {
        let x = quadric();
        let a = FormalArc::parse(&["t", "0", "0", "0"], None).unwrap();
        let r = ci_reduce(&x, &a, 3, 1, GenericityOptions::default()).unwrap();
        assert_eq!(r.generators(), x.generators());
    }

    #[test]
    fn dependent_generators_exhaust_resampling() {
        let x = AffineScheme::parse(&["x", "y", "z"], &["x", "2*x"], Some(1)).unwrap();
        let a = FormalArc::parse(&["0", "t", "t"], None).unwrap();
        let opts = GenericityOptions { resample_limit: 3, ..Default::default() };
        assert!(matches!(ci_reduce(&x, &a, 1, 5, opts), Err(Error::CertificateFailure { .. })));
    }
}
