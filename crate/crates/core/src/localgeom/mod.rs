//! Embedding dimension, tangent-cone dimension and embedding codimension of
//! a finite-type local ring at a rational point, and their jet-level values
//! along an arc.
//!
//! Two routes to the embedding codimension are always run and compared:
//! `edim - dim(tangent cone)` from the local standard basis, and
//! `height(ini) - rank` from a global Gröbner basis of the initial forms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jets::{jet_ideal, truncate_arc, AffineScheme, FormalArc};
use crate::polyalg::{
    groebner_basis_with, leading_monomials, linalg, monomial_dim, mora_standard_basis_with, Monomial,
    MonomialOrder, Poly, Rational, StdOptions,
};

/// How the tangent-cone dimension was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimCertificate {
    /// A full local standard basis.
    StandardBasis,
    /// The height bound `nvars - #generators` met the upper bound read off
    /// a standard basis computed modulo `m^{truncation+1}`.
    Bounds { lower: usize, truncation: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalAnalysis {
    pub nvars: usize,
    pub jacobian_rank: usize,
    pub edim: usize,
    pub tangent_cone_dim: usize,
    pub ecodim: usize,
    /// Generators of the ideal of the tangent cone at the origin (up to the
    /// truncation degree for a bounds certificate).
    pub initial_forms: Vec<Poly>,
    pub certificate: DimCertificate,
}

/// Serialized shape of a [`LocalAnalysis`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalRecord {
    pub nvars: usize,
    pub edim: usize,
    pub dim: usize,
    pub ecodim: usize,
    pub jacobian_rank: usize,
    pub initial_forms: Vec<String>,
    pub stabilized: bool,
}

impl LocalAnalysis {
    pub fn record(&self, stabilized: bool) -> LocalRecord {
        LocalRecord {
            nvars: self.nvars,
            edim: self.edim,
            dim: self.tangent_cone_dim,
            ecodim: self.ecodim,
            jacobian_rank: self.jacobian_rank,
            initial_forms: self.initial_forms.iter().map(Poly::to_string).collect(),
            stabilized,
        }
    }
}

fn check_point(gens: &[Poly], point: &[Rational]) -> Result<()> {
    if let Some(g) = gens.first() {
        if g.vars().len() != point.len() {
            return Err(Error::VarsetMismatch);
        }
    }
    for (index, g) in gens.iter().enumerate() {
        let value = g.evaluate(point);
        if !num_traits::Zero::is_zero(&value) {
            return Err(Error::PointNotOnScheme { index, value: crate::polyalg::rational_to_string(&value) });
        }
    }
    Ok(())
}

/// Generators in coordinates centred at `point`.
pub fn translate_to_origin(gens: &[Poly], point: &[Rational]) -> Result<Vec<Poly>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let vars = first.vars();
    if vars.len() != point.len() {
        return Err(Error::VarsetMismatch);
    }
    let images: Vec<Poly> =
        (0..vars.len()).map(|i| &Poly::var(vars, i) + &Poly::constant(vars, point[i].clone())).collect();
    let out: Vec<Poly> = gens.iter().map(|g| g.substitute(&images, vars)).collect();
    for (index, g) in out.iter().enumerate() {
        let c = g.constant_term();
        if !num_traits::Zero::is_zero(&c) {
            return Err(Error::PointNotOnScheme { index, value: crate::polyalg::rational_to_string(&c) });
        }
    }
    Ok(out)
}

/// Rank of the Jacobian matrix evaluated at `point`.
pub fn jacobian_rank_at_point(gens: &[Poly], point: &[Rational]) -> Result<usize> {
    check_point(gens, point)?;
    let rows: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| (0..point.len()).map(|j| g.partial_derivative(j).evaluate(point)).collect())
        .collect();
    Ok(linalg::rank(&rows))
}

pub fn edim_at_point(gens: &[Poly], point: &[Rational]) -> Result<usize> {
    Ok(point.len() - jacobian_rank_at_point(gens, point)?)
}

pub fn tangent_cone_dim_at_point(gens: &[Poly], point: &[Rational]) -> Result<usize> {
    tangent_cone_dim_at_point_with(gens, point, StdOptions::default())
}

pub fn tangent_cone_dim_at_point_with(gens: &[Poly], point: &[Rational], opts: StdOptions) -> Result<usize> {
    let local = translate_to_origin(gens, point)?;
    let order = MonomialOrder::antigrlex();
    let basis = mora_standard_basis_with(&local, &order, opts)?;
    Ok(monomial_dim(&leading_monomials(&basis, &order), point.len()))
}

pub fn ecodim_at_point(gens: &[Poly], point: &[Rational]) -> Result<LocalAnalysis> {
    ecodim_at_point_with(gens, point, StdOptions::default())
}

pub fn ecodim_at_point_with(gens: &[Poly], point: &[Rational], opts: StdOptions) -> Result<LocalAnalysis> {
    let nvars = point.len();
    let jacobian_rank = jacobian_rank_at_point(gens, point)?;
    let edim = nvars - jacobian_rank;
    let local = translate_to_origin(gens, point)?;
    let anti = MonomialOrder::antigrlex();
    let basis = mora_standard_basis_with(&local, &anti, opts)?;
    let tangent_cone_dim = monomial_dim(&leading_monomials(&basis, &anti), nvars);
    let initial_forms: Vec<Poly> = basis.iter().map(Poly::initial_form).collect();

    let grevlex = MonomialOrder::grevlex();
    let cone_basis = groebner_basis_with(&initial_forms, &grevlex, opts)?;
    let height = nvars - monomial_dim(&leading_monomials(&cone_basis, &grevlex), nvars);

    let ecodim = edim.checked_sub(tangent_cone_dim).ok_or_else(|| {
        Error::InternalInconsistency(format!("tangent cone dimension {tangent_cone_dim} exceeds edim {edim}"))
    })?;
    if height.checked_sub(jacobian_rank) != Some(ecodim) {
        return Err(Error::InternalInconsistency(format!(
            "ecodim routes disagree: edim - dim = {ecodim}, height(ini) - rank = {height} - {jacobian_rank}"
        )));
    }
    Ok(LocalAnalysis {
        nvars,
        jacobian_rank,
        edim,
        tangent_cone_dim,
        ecodim,
        initial_forms,
        certificate: DimCertificate::StandardBasis,
    })
}

/// Dimension by matching bounds, for ideals whose full standard basis is
/// out of reach.
///
/// `gens` must generate the ideal; the lower bound is `nvars - gens.len()`.
/// For `N = 1..=max_truncation` a standard basis modulo `m^{N+1}` yields two
/// upper bounds: from its leading monomials, and from a global Gröbner basis
/// of its initial forms. The first `N` at which both meet the lower bound
/// certifies the dimension; `None` if none does.
pub fn ecodim_by_bounds(
    gens: &[Poly],
    point: &[Rational],
    max_truncation: u32,
    opts: StdOptions,
) -> Result<Option<LocalAnalysis>> {
    let nvars = point.len();
    let jacobian_rank = jacobian_rank_at_point(gens, point)?;
    let edim = nvars - jacobian_rank;
    let lower = nvars.saturating_sub(gens.len());
    let local = translate_to_origin(gens, point)?;
    let anti = MonomialOrder::antigrlex();
    let grevlex = MonomialOrder::grevlex();
    for n in 1..=max_truncation {
        let basis = mora_standard_basis_with(&local, &anti, StdOptions { truncate_degree: Some(n), ..opts })?;
        let upper = monomial_dim(&leading_monomials(&basis, &anti), nvars);
        if upper < lower {
            return Err(Error::InternalInconsistency(format!("dimension bounds crossed: {lower} > {upper}")));
        }
        if upper > lower {
            continue;
        }
        let initial_forms: Vec<Poly> = basis.iter().map(Poly::initial_form).collect();
        let cone = groebner_basis_with(&initial_forms, &grevlex, StdOptions { truncate_degree: None, ..opts })?;
        let upper_cone = monomial_dim(&leading_monomials(&cone, &grevlex), nvars);
        if upper_cone < lower {
            return Err(Error::InternalInconsistency(format!("dimension bounds crossed: {lower} > {upper_cone}")));
        }
        if upper_cone == lower {
            let ecodim = edim.checked_sub(lower).ok_or_else(|| {
                Error::InternalInconsistency(format!("tangent cone dimension {lower} exceeds edim {edim}"))
            })?;
            return Ok(Some(LocalAnalysis {
                nvars,
                jacobian_rank,
                edim,
                tangent_cone_dim: lower,
                ecodim,
                initial_forms,
                certificate: DimCertificate::Bounds { lower, truncation: n },
            }));
        }
    }
    Ok(None)
}

/// Local analysis of the jet scheme `X_n` at the truncation `α_n`.
pub fn ecodim_jet(x: &AffineScheme, alpha: &FormalArc, n: usize) -> Result<LocalAnalysis> {
    ecodim_jet_with(x, alpha, n, StdOptions::default())
}

pub fn ecodim_jet_with(x: &AffineScheme, alpha: &FormalArc, n: usize, opts: StdOptions) -> Result<LocalAnalysis> {
    let point = truncate_arc(alpha, x.vars(), n)?;
    let (ideal, _) = jet_ideal(x, n)?;
    ecodim_at_point_with(&ideal, point.coords(), opts)
}

/// Jet-level analyses over a window of levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcodimWindow {
    pub start: usize,
    pub levels: Vec<LocalAnalysis>,
}

impl EcodimWindow {
    /// Whether every level in the window reports the same ecodim.
    pub fn stabilized(&self) -> bool {
        self.levels.windows(2).all(|w| w[0].ecodim == w[1].ecodim)
    }

    /// The value at the top of the window.
    pub fn value(&self) -> usize {
        self.levels.last().map_or(0, |a| a.ecodim)
    }

    pub fn ecodims(&self) -> Vec<usize> {
        self.levels.iter().map(|a| a.ecodim).collect()
    }
}

/// Default window `[2e, 2e + 2]` for contact order `e`.
pub fn default_window(e: usize) -> (usize, usize) {
    (2 * e, 2 * e + 2)
}

pub fn ecodim_window(x: &AffineScheme, alpha: &FormalArc, start: usize, end: usize) -> Result<EcodimWindow> {
    ecodim_window_with(x, alpha, start, end, StdOptions::default())
}

pub fn ecodim_window_with(
    x: &AffineScheme,
    alpha: &FormalArc,
    start: usize,
    end: usize,
    opts: StdOptions,
) -> Result<EcodimWindow> {
    if end < start {
        return Err(Error::InvalidInput(format!("empty window {start}:{end}")));
    }
    let levels = (start..=end).map(|n| ecodim_jet_with(x, alpha, n, opts)).collect::<Result<Vec<_>>>()?;
    Ok(EcodimWindow { start, levels })
}

/// Leading monomials of a local standard basis at `point`, for callers that
/// need the raw tangent-cone data.
pub fn tangent_cone_leading_monomials(gens: &[Poly], point: &[Rational]) -> Result<Vec<Monomial>> {
    let local = translate_to_origin(gens, point)?;
    let order = MonomialOrder::antigrlex();
    Ok(leading_monomials(&mora_standard_basis_with(&local, &order, StdOptions::default())?, &order))
}
