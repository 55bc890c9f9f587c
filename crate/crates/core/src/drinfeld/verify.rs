use num_traits::Zero;
use serde::Serialize;

use super::model::{build_drinfeld_model, DrinfeldModel};
use super::projection::{choose_projection, ci_reduce, contact_order, GenericityOptions, ProjectionMap};
use crate::error::{Error, Result};
use crate::jets::{jet_ideal, truncate_arc, AffineScheme, FormalArc};
use crate::localgeom::{ecodim_at_point_with, ecodim_by_bounds, edim_at_point, DimCertificate, LocalAnalysis};
use crate::polyalg::{linalg, OrdResult, Rational, StdOptions};

fn assertion(what: &str, expected: impl ToString, actual: impl ToString) -> Error {
    Error::AssertionFailure { what: what.into(), expected: expected.to_string(), actual: actual.to_string() }
}

/// `edim(Z, z)`, asserted equal to `2de`.
pub fn verify_drinfeld_edim(model: &DrinfeldModel) -> Result<usize> {
    let edim = edim_at_point(model.equations(), model.z())?;
    let expected = 2 * model.d() * model.e();
    if edim != expected {
        return Err(assertion("edim(Z, z) = 2de", expected, edim));
    }
    Ok(edim)
}

/// Budgets for the dimension of `(Z, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimsOptions {
    /// Step budget for the full local standard basis.
    pub exact: StdOptions,
    /// Largest truncation degree tried once the full basis runs out.
    pub max_truncation: u32,
    /// Step budget per truncated basis.
    pub truncated: StdOptions,
}

impl Default for DimsOptions {
    fn default() -> Self {
        DimsOptions {
            exact: StdOptions::with_max_steps(500),
            max_truncation: 6,
            truncated: StdOptions::default(),
        }
    }
}

pub fn verify_drinfeld_dims(model: &DrinfeldModel) -> Result<LocalAnalysis> {
    verify_drinfeld_dims_with(model, DimsOptions::default())
}

/// Local analysis of `(Z, z)` with `(2d-1)e <= dim <= 2de` asserted.
///
/// A full standard basis is tried first. When it exceeds its budget the
/// dimension is certified on the sparse unfolded presentation by matching
/// bounds; its edim must agree with that of `(Z, z)`. The returned
/// analysis then lives in the coordinates of that presentation.
pub fn verify_drinfeld_dims_with(model: &DrinfeldModel, opts: DimsOptions) -> Result<LocalAnalysis> {
    let a = match ecodim_at_point_with(model.equations(), model.z(), opts.exact) {
        Ok(a) => a,
        Err(Error::ResourceLimit(why)) => {
            let u = model.unfolded_minimal()?;
            // certification needs upper = lower, and upper >= dim >= (2d-1)e
            let height = u.vars.len().saturating_sub(u.equations.len());
            if height < dim_bounds(model).0 {
                return Err(Error::ResourceLimit(format!(
                    "{why}; height bound {height} of the unfolded presentation is below (2d-1)e"
                )));
            }
            let Some(b) = ecodim_by_bounds(&u.equations, &u.point, opts.max_truncation, opts.truncated)? else {
                return Err(Error::ResourceLimit(format!(
                    "{why}; dimension bounds did not meet up to truncation degree {}",
                    opts.max_truncation
                )));
            };
            let edim = edim_at_point(model.equations(), model.z())?;
            if edim != b.edim {
                return Err(Error::InternalInconsistency(format!(
                    "edim {edim} of the model differs from edim {} of its unfolded presentation",
                    b.edim
                )));
            }
            b
        }
        Err(other) => return Err(other),
    };
    let (lo, hi) = dim_bounds(model);
    if !(lo..=hi).contains(&a.tangent_cone_dim) {
        return Err(assertion("(2d-1)e <= dim(Z, z) <= 2de", format!("[{lo}, {hi}]"), a.tangent_cone_dim));
    }
    Ok(a)
}

pub fn dim_bounds(model: &DrinfeldModel) -> (usize, usize) {
    let (d, e) = (model.d(), model.e());
    ((2 * d).saturating_sub(1) * e, 2 * d * e)
}

/// Matrix of the jet-level cotangent map of the projection at `α_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetCotangentMap {
    /// Rows: `du_i^{(j)}` in the order `i`-major; columns: a basis of the
    /// cotangent space of `X_n` at `α_n`.
    pub matrix: Vec<Vec<Rational>>,
    pub rank: usize,
    pub expected: usize,
}

/// Computes the map without asserting injectivity.
pub fn jet_cotangent_matrix(x: &AffineScheme, proj: &ProjectionMap, alpha: &FormalArc, n: usize) -> Result<JetCotangentMap> {
    let big_n = x.ambient_dim();
    let point = truncate_arc(alpha, x.vars(), n)?;
    let space = point.space().clone();
    let (ideal, _) = jet_ideal(x, n)?;
    let jac: Vec<Vec<Rational>> = ideal
        .iter()
        .map(|g| (0..space.nvars()).map(|k| g.partial_derivative(k).evaluate(point.coords())).collect())
        .collect();
    let (echelon, pivots) = linalg::rref(&jac);
    let mut rows = Vec::with_capacity(proj.d() * (n + 1));
    for row in proj.projection_matrix() {
        for j in 0..=n {
            let mut v = vec![Rational::zero(); space.nvars()];
            for (k, c) in row.iter().enumerate().take(big_n) {
                v[space.var(k, j)] = c.clone();
            }
            rows.push(v);
        }
    }
    let matrix = linalg::quotient_coordinates(&rows, &echelon, &pivots);
    let rank = linalg::rank(&matrix);
    Ok(JetCotangentMap { matrix, rank, expected: proj.d() * (n + 1) })
}

/// The cotangent map at level `n`, asserted injective (rank `d(n+1)`).
pub fn jet_cotangent_map(x: &AffineScheme, proj: &ProjectionMap, alpha: &FormalArc, n: usize) -> Result<JetCotangentMap> {
    let map = jet_cotangent_matrix(x, proj, alpha, n)?;
    if map.rank != map.expected {
        return Err(assertion("rank of the jet cotangent map = d(n+1)", map.expected, map.rank));
    }
    Ok(map)
}

/// Gradients at `z` of the components `ψ_i^{(n)}`, `n < 2e`, of
/// `(x̄, ȳ, q) ↦ x̄(t) + t^{-2e}(a(t))_{≥2e} q(t)^2 mod t^{2e}`; one row per
/// `(i, n)`, `i`-major, columns indexed by the model coordinates.
///
/// At `q = t^e` the differential of `q^2` is `2 t^e dq`, so the row of
/// `(i, n)` is `dx̄_i^{(n)} + 2 Σ_{k+l=n-e} a_i^{(k+2e)} dq^{(l)}`.
pub fn tangent_map_matrix(model: &DrinfeldModel, alpha: &FormalArc) -> Result<Vec<Vec<Rational>>> {
    let e = model.e();
    let arc = model.projection().transform_arc(alpha)?;
    let two = Rational::from_integer(2.into());
    let mut rows = Vec::with_capacity(2 * model.d() * e);
    for i in 0..model.d() {
        for n in 0..2 * e {
            let mut v = vec![Rational::zero(); model.m()];
            v[model.xbar_index(i, n)] = Rational::from_integer(1.into());
            if n >= e {
                for l in 0..=n - e {
                    let k = n - e - l;
                    v[model.q_index(l)] += &two * arc.coeff(i, k + 2 * e)?;
                }
            }
            rows.push(v);
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentCheck {
    pub rank: usize,
    pub edim: usize,
    pub expected: usize,
}

/// Checks that the cotangent map of `Y_{2e-1}` at `β_{2e-1}` onto that of
/// `(Z, z)` is surjective of rank `2de`.
pub fn drinfeld_tangent_check(model: &DrinfeldModel, alpha: &FormalArc) -> Result<TangentCheck> {
    let expected = 2 * model.d() * model.e();
    if model.is_smooth_marker() {
        return Ok(TangentCheck { rank: 0, edim: 0, expected });
    }
    let rows = tangent_map_matrix(model, alpha)?;
    let jac: Vec<Vec<Rational>> = model
        .equations()
        .iter()
        .map(|g| (0..model.m()).map(|k| g.partial_derivative(k).evaluate(model.z())).collect())
        .collect();
    let (echelon, pivots) = linalg::rref(&jac);
    let edim = model.m() - pivots.len();
    let rank = linalg::rank(&linalg::quotient_coordinates(&rows, &echelon, &pivots));
    let check = TangentCheck { rank, edim, expected };
    if rank != expected || rank != edim {
        return Err(assertion("tangent map onto the cotangent space of (Z, z)", format!("rank {expected} = edim"), format!("rank {rank}, edim {edim}")));
    }
    Ok(check)
}

/// Output of the full construction: the model plus the choices made.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrinfeldRun {
    pub reduced: AffineScheme,
    pub model: DrinfeldModel,
    pub seed: u64,
}

/// Seed used for the coordinate change, derived from the run seed so the
/// two random choices never share a stream.
pub fn projection_seed(seed: u64) -> u64 {
    seed ^ 0x9E37_79B9_7F4A_7C15
}

/// Complete-intersection reduction, certified projection and model.
pub fn construct_drinfeld(x: &AffineScheme, alpha: &FormalArc, seed: u64, opts: GenericityOptions) -> Result<DrinfeldRun> {
    let d = x.require_dim()?;
    let n = x.ambient_dim();
    let e = match contact_order(x, alpha, d, opts.precision_cap)? {
        OrdResult::Exact(e) => e,
        other => {
            return Err(Error::CertificateFailure {
                attempts: 0,
                reason: format!("ord of the Jacobian ideal along the arc is {other}"),
            })
        }
    };
    if let Some(p) = alpha.precision() {
        if p < 2 * e + 1 {
            return Err(Error::InsufficientPrecision { needed: 2 * e + 1, have: p });
        }
    }
    let reduced = ci_reduce(x, alpha, d, seed, opts)?;
    if e == 0 {
        let model = DrinfeldModel::smooth_marker(d, n - d, ProjectionMap::identity(n, d))?;
        return Ok(DrinfeldRun { reduced, model, seed });
    }
    let (proj, e2) = choose_projection(&reduced, alpha, projection_seed(seed), opts)?;
    debug_assert_eq!(e, e2);
    let model = build_drinfeld_model(&reduced, &proj, alpha, e)?;
    Ok(DrinfeldRun { reduced, model, seed })
}

/// Serialized summary of a verified model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DrinfeldReport {
    pub e: usize,
    pub d: usize,
    pub c: usize,
    pub m: usize,
    pub edim: usize,
    pub dim: usize,
    pub ecodim: usize,
    pub edim_expected: usize,
    pub dim_bounds: [usize; 2],
    pub seed: u64,
    pub certified: bool,
    pub dim_certificate: DimCertificate,
}

/// Runs the edim and dimension checks and assembles the report.
pub fn drinfeld_report(run: &DrinfeldRun, opts: DimsOptions) -> Result<DrinfeldReport> {
    let m = &run.model;
    let edim = verify_drinfeld_edim(m)?;
    let a = verify_drinfeld_dims_with(m, opts)?;
    let (lo, hi) = dim_bounds(m);
    Ok(DrinfeldReport {
        e: m.e(),
        d: m.d(),
        c: m.c(),
        m: m.m(),
        edim,
        dim: a.tangent_cone_dim,
        ecodim: a.ecodim,
        edim_expected: 2 * m.d() * m.e(),
        dim_bounds: [lo, hi],
        seed: run.seed,
        certified: true,
        dim_certificate: a.certificate,
    })
}
