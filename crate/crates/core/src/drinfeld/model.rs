use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::Zero;

use super::projection::ProjectionMap;
use crate::error::{Error, Result};
use crate::jets::{AffineScheme, FormalArc};
use crate::polyalg::{Poly, Rational, TPoly, VarId, VarSet};

/// The finite-type model `(Z, z)` in `A^m`, `m = e(1 + 2d + c)`.
///
/// Coordinates are ordered `q_n` (`n < e`), then `xbar{i}_{n}` (`n < 2e`,
/// `i = 1..d`), then `ybar{j}_{n}` (`n < e`, `j = 1..c`). `q(t)` is monic of
/// degree `e`. With `e = 0` the model is the smooth marker: no coordinates
/// and no equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrinfeldModel {
    e: usize,
    d: usize,
    c: usize,
    vars: Arc<VarSet>,
    equations: Vec<Poly>,
    z: Vec<Rational>,
    projection: ProjectionMap,
    /// The complete-intersection generators in projected coordinates.
    generators: Vec<Poly>,
}

impl DrinfeldModel {
    pub fn smooth_marker(d: usize, c: usize, projection: ProjectionMap) -> Result<Self> {
        Ok(DrinfeldModel {
            e: 0,
            d,
            c,
            vars: VarSet::new(Vec::new())?,
            equations: Vec::new(),
            z: Vec::new(),
            projection,
            generators: Vec::new(),
        })
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn m(&self) -> usize {
        self.vars.len()
    }

    pub fn is_smooth_marker(&self) -> bool {
        self.e == 0
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn z(&self) -> &[Rational] {
        &self.z
    }

    pub fn projection(&self) -> &ProjectionMap {
        &self.projection
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn q_index(&self, n: usize) -> usize {
        n
    }

    /// `i` is zero-based.
    pub fn xbar_index(&self, i: usize, n: usize) -> usize {
        self.e + 2 * self.e * i + n
    }

    /// `j` is zero-based.
    pub fn ybar_index(&self, j: usize, n: usize) -> usize {
        self.e + 2 * self.e * self.d + self.e * j + n
    }

    /// Plain-text presentation: the variable list, then one equation per line.
    pub fn presentation(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "vars {}", self.vars.names().join(", "));
        for eq in &self.equations {
            let _ = writeln!(s, "{eq}");
        }
        s
    }
}

fn model_vars(e: usize, d: usize, c: usize) -> Result<Arc<VarSet>> {
    let mut ids = Vec::with_capacity(e * (1 + 2 * d + c));
    ids.extend((0..e).map(|n| VarId::new("q", vec![n as u32])));
    for i in 1..=d {
        ids.extend((0..2 * e).map(|n| VarId::new("xbar", vec![i as u32, n as u32])));
    }
    for j in 1..=c {
        ids.extend((0..e).map(|n| VarId::new("ybar", vec![j as u32, n as u32])));
    }
    VarSet::new(ids)
}

/// `q(t)` and the series `x̄_i(t)`, `ȳ_j(t)` over the model coordinates.
fn generic_series(vars: &Arc<VarSet>, e: usize, d: usize, c: usize) -> (TPoly, Vec<TPoly>) {
    let var = |k: usize| Poly::var(vars, k);
    let mut q = (0..e).map(var).collect::<Vec<_>>();
    q.push(Poly::one(vars));
    let q = TPoly::new(vars, q);
    let mut images = Vec::with_capacity(d + c);
    for i in 0..d {
        images.push(TPoly::new(vars, (0..2 * e).map(|n| var(e + 2 * e * i + n)).collect()));
    }
    for j in 0..c {
        images.push(TPoly::new(vars, (0..e).map(|n| var(e + 2 * e * d + e * j + n)).collect()));
    }
    (q, images)
}

/// Reduces every product modulo a monic `modulus`, if one is given.
struct ModRing<'a> {
    modulus: Option<&'a TPoly>,
}

impl ModRing<'_> {
    fn reduce(&self, p: TPoly) -> Result<TPoly> {
        match self.modulus {
            Some(q) => p.rem_monic(q),
            None => Ok(p),
        }
    }

    fn mul(&self, a: &TPoly, b: &TPoly) -> Result<TPoly> {
        self.reduce(a.mul(b))
    }

    /// `f` evaluated at the series `images`.
    fn eval(&self, f: &Poly, images: &[TPoly], target: &Arc<VarSet>) -> Result<TPoly> {
        let mut powers: HashMap<(usize, u32), TPoly> = HashMap::new();
        let mut acc = TPoly::zero(target);
        for (mono, coeff) in f.terms() {
            let mut term = TPoly::constant(Poly::constant(target, coeff.clone()));
            for (i, k) in mono.iter() {
                let power = match powers.entry((i, k)) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(v) => {
                        let mut p = images[i].clone();
                        for _ in 1..k {
                            p = self.mul(&p, &images[i])?;
                        }
                        v.insert(p)
                    }
                };
                term = self.mul(&term, power)?;
            }
            acc = acc.add(&term);
        }
        self.reduce(acc)
    }

    fn det(&self, m: &[Vec<TPoly>]) -> Result<TPoly> {
        match m.len() {
            1 => Ok(m[0][0].clone()),
            n => {
                let vars = m[0][0].vars().clone();
                let mut acc = TPoly::zero(&vars);
                for j in 0..n {
                    if m[0][j].is_zero() {
                        continue;
                    }
                    let minor = cofactor_block(m, 0, j);
                    let term = self.mul(&m[0][j], &self.det(&minor)?)?;
                    acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                Ok(acc)
            }
        }
    }

    /// Classical adjoint; the adjoint of a `1 × 1` matrix is `(1)`.
    fn adjugate(&self, m: &[Vec<TPoly>]) -> Result<Vec<Vec<TPoly>>> {
        let n = m.len();
        let vars = m[0][0].vars().clone();
        if n == 1 {
            return Ok(vec![vec![TPoly::constant(Poly::one(&vars))]]);
        }
        let mut adj = vec![vec![TPoly::zero(&vars); n]; n];
        for i in 0..n {
            for j in 0..n {
                let cof = self.det(&cofactor_block(m, i, j))?;
                adj[j][i] = if (i + j) % 2 == 0 { cof } else { TPoly::zero(&vars).sub(&cof) };
            }
        }
        Ok(adj)
    }
}

fn cofactor_block(m: &[Vec<TPoly>], row: usize, col: usize) -> Vec<Vec<TPoly>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, p)| p.clone()).collect())
        .collect()
}

/// Builds `(Z, z)` from a complete intersection `x`, a certified projection
/// and the contact order `e >= 1`. `x` and `alpha` are in the original
/// coordinates.
pub fn build_drinfeld_model(x: &AffineScheme, proj: &ProjectionMap, alpha: &FormalArc, e: usize) -> Result<DrinfeldModel> {
    let (d, c) = (proj.d(), proj.c());
    if x.generators().len() != c {
        return Err(Error::InvalidCodim { size: c, rows: x.generators().len(), cols: x.ambient_dim() });
    }
    if e == 0 {
        return DrinfeldModel::smooth_marker(d, c, proj.clone());
    }
    let moved = proj.transform_scheme(x)?;
    let arc = proj.transform_arc(alpha)?;
    let vars = model_vars(e, d, c)?;

    let (q, images) = generic_series(&vars, e, d, c);
    let q2 = q.mul(&q);

    let ring_q = ModRing { modulus: Some(&q) };
    let ring_q2 = ModRing { modulus: Some(&q2) };
    let mut equations = Vec::new();
    let mut push_coeffs = |p: &TPoly, len: usize| {
        equations.extend((0..len).map(|k| p.coeff(k)).filter(|p| !p.is_zero()));
    };

    let p_mod_q2: Vec<TPoly> =
        moved.generators().iter().map(|g| ring_q2.eval(g, &images, &vars)).collect::<Result<_>>()?;
    for p in &p_mod_q2 {
        push_coeffs(&ring_q.reduce(p.clone())?, e);
    }
    let jac: Vec<Vec<TPoly>> = moved
        .generators()
        .iter()
        .map(|g| (d..d + c).map(|j| ring_q2.eval(&g.partial_derivative(j), &images, &vars)).collect())
        .collect::<Result<_>>()?;
    let jac_mod_q: Vec<Vec<TPoly>> =
        jac.iter().map(|r| r.iter().map(|p| ring_q.reduce(p.clone())).collect()).collect::<Result<_>>()?;
    push_coeffs(&ring_q.reduce(ring_q.det(&jac_mod_q)?)?, e);
    let adj = ring_q2.adjugate(&jac)?;
    for row in &adj {
        let mut acc = TPoly::zero(&vars);
        for (a, p) in row.iter().zip(&p_mod_q2) {
            acc = acc.add(&ring_q2.mul(a, p)?);
        }
        push_coeffs(&ring_q2.reduce(acc)?, 2 * e);
    }

    let mut z = vec![Rational::zero(); vars.len()];
    for i in 0..d {
        for n in 0..2 * e {
            z[e + 2 * e * i + n] = arc.coeff(i, n)?;
        }
    }
    for j in 0..c {
        for n in 0..e {
            z[e + 2 * e * d + e * j + n] = arc.coeff(d + j, n)?;
        }
    }
    let model =
        DrinfeldModel { e, d, c, vars, equations, z, projection: proj.clone(), generators: moved.generators().to_vec() };
    for (index, eq) in model.equations.iter().enumerate() {
        let v = eq.evaluate(&model.z);
        if !v.is_zero() {
            return Err(Error::PointNotOnScheme { index, value: crate::polyalg::rational_to_string(&v) });
        }
    }
    Ok(model)
}

/// A presentation of `(Z, z)` with the quotients made explicit.
///
/// Each congruence `F ≡ 0 mod Q` becomes the identity `F(t) = Q(t) s(t)`
/// in fresh coordinates `s`; since `Q` is monic, `s` is a polynomial
/// function of the model coordinates and the two schemes are isomorphic.
/// The equations are sparse, which keeps local standard bases small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnfoldedModel {
    pub vars: Arc<VarSet>,
    pub equations: Vec<Poly>,
    pub point: Vec<Rational>,
}

impl DrinfeldModel {
    pub fn unfolded(&self) -> Result<UnfoldedModel> {
        self.unfolded_with(true)
    }

    /// The unfolded presentation with redundant identities left out: for
    /// `c = 1` the adjugate is `1`, so `p ≡ 0 mod q^2` already implies
    /// `p ≡ 0 mod q`.
    pub fn unfolded_minimal(&self) -> Result<UnfoldedModel> {
        self.unfolded_with(self.c != 1)
    }

    fn unfolded_with(&self, congruences: bool) -> Result<UnfoldedModel> {
        let (e, d, c) = (self.e, self.d, self.c);
        if e == 0 {
            return Ok(UnfoldedModel { vars: self.vars.clone(), equations: Vec::new(), point: Vec::new() });
        }
        let vars = &self.vars;
        let (q, images) = generic_series(vars, e, d, c);
        let q2 = q.mul(&q);
        let ring = ModRing { modulus: None };
        let p: Vec<TPoly> = self.generators.iter().map(|g| ring.eval(g, &images, vars)).collect::<Result<_>>()?;
        let jac: Vec<Vec<TPoly>> = self
            .generators
            .iter()
            .map(|g| (d..d + c).map(|j| ring.eval(&g.partial_derivative(j), &images, vars)).collect())
            .collect::<Result<_>>()?;
        let mut identities: Vec<(TPoly, &TPoly)> =
            if congruences { p.iter().map(|pl| (pl.clone(), &q)).collect() } else { Vec::new() };
        identities.push((ring.det(&jac)?, &q));
        for row in ring.adjugate(&jac)? {
            let w = row.iter().zip(&p).fold(TPoly::zero(vars), |acc, (a, pl)| acc.add(&a.mul(pl)));
            identities.push((w, &q2));
        }

        let mut ids: Vec<VarId> = vars.vars().to_vec();
        let mut widths = Vec::with_capacity(identities.len());
        for (k, (f, modulus)) in identities.iter().enumerate() {
            let dq = modulus.degree().expect("monic");
            let width = f.degree().map_or(0, |df| (df + 1).saturating_sub(dq));
            ids.extend((0..width).map(|n| VarId::new("quot", vec![k as u32, n as u32])));
            widths.push(width);
        }
        let ext = VarSet::new(ids)?;
        let embed: Vec<usize> = (0..vars.len()).collect();
        let lift = |t: &TPoly| TPoly::new(&ext, t.coeffs().iter().map(|c| c.reindex(&ext, &embed)).collect());

        let mut equations = Vec::new();
        let mut point = self.z.clone();
        let mut offset = vars.len();
        for ((f, modulus), width) in identities.iter().zip(widths) {
            let s = TPoly::new(&ext, (0..width).map(|n| Poly::var(&ext, offset + n)).collect());
            let diff = lift(f).sub(&lift(modulus).mul(&s));
            equations.extend(diff.coeffs().iter().filter(|p| !p.is_zero()).cloned());
            let values = f.evaluate_coeffs(&self.z);
            let dq = modulus.degree().expect("monic");
            point.extend((0..width).map(|n| values.get(n + dq).cloned().unwrap_or_else(Rational::zero)));
            offset += width;
        }
        for (index, eq) in equations.iter().enumerate() {
            let v = eq.evaluate(&point);
            if !v.is_zero() {
                return Err(Error::InternalInconsistency(format!(
                    "unfolded equation {index} does not vanish at the base point"
                )));
            }
        }
        Ok(UnfoldedModel { vars: ext, equations, point })
    }
}
