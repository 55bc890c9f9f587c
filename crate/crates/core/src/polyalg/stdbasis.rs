//! Gröbner bases for global orders (Buchberger with Gebauer–Möller pair
//! pruning) and standard bases for the local order (Mora's tangent cone
//! algorithm with écart-driven weak normal forms).

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::Poly;
use super::var::VarSet;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StdOptions {
    /// Upper bound on single reduction steps across the whole computation.
    pub max_steps: usize,
    /// Computes modulo `m^{N+1}` instead: terms of degree above `N` are
    /// dropped (local orders only). Leading monomials of degree `<= N` are
    /// those of the untruncated ideal.
    pub truncate_degree: Option<u32>,
    /// Upper bound on the terms held by the auxiliary reducers of a single
    /// weak normal form.
    pub max_stored_terms: usize,
}

impl Default for StdOptions {
    fn default() -> Self {
        StdOptions { max_steps: 5_000_000, truncate_degree: None, max_stored_terms: 2_000_000 }
    }
}

impl StdOptions {
    pub fn with_max_steps(max_steps: usize) -> Self {
        StdOptions { max_steps, ..Default::default() }
    }
}

type Terms = Vec<(Monomial, Rational)>;

/// Terms sorted in descending order under the active monomial order.
#[derive(Debug, Clone)]
struct OPoly {
    terms: Terms,
    max_degree: u32,
}

impl OPoly {
    fn new(p: &Poly, order: &MonomialOrder) -> Self {
        let mut terms: Terms = p.terms().to_vec();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let max_degree = p.total_degree().unwrap_or(0);
        OPoly { terms, max_degree }
    }

    fn from_terms(terms: Terms) -> Self {
        let max_degree = terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        OPoly { terms, max_degree }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn truncate(mut self, bound: Option<u32>) -> Self {
        if let Some(n) = bound {
            if self.max_degree > n {
                self.terms.retain(|t| t.0.degree() <= n);
                self.max_degree = self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
            }
        }
        self
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    fn ecart(&self) -> u32 {
        self.max_degree - self.lm().degree()
    }

    fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = self.lc().recip();
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    /// `self - k * m * g`.
    fn sub_mul(&self, k: &Rational, m: &Monomial, g: &OPoly, order: &MonomialOrder) -> OPoly {
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Terms::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut scaled: Option<Monomial> = None;
        while i < a.len() || j < b.len() {
            if j < b.len() && scaled.is_none() {
                scaled = Some(b[j].0.mul(m));
            }
            let ord = match (a.get(i), &scaled) {
                (Some(x), Some(y)) => order.cmp(&x.0, y),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((scaled.take().expect("pending term"), -(k * &b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 - k * &b[j].1;
                    let mono = scaled.take().expect("pending term");
                    if !c.is_zero() {
                        out.push((mono, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        OPoly::from_terms(out)
    }

    fn to_poly(&self, vars: &Arc<VarSet>) -> Poly {
        Poly::from_terms(vars, self.terms.iter().cloned())
    }
}

fn spoly(f: &OPoly, g: &OPoly, order: &MonomialOrder) -> OPoly {
    let lcm = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&lcm).expect("lcm is a multiple");
    let mg = g.lm().quotient_of(&lcm).expect("lcm is a multiple");
    let mf_f = OPoly::from_terms(f.terms.iter().map(|(m, c)| (m.mul(&mf), c / f.lc())).collect());
    mf_f.sub_mul(&g.lc().recip(), &mg, g, order)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    opts: StdOptions,
    steps: usize,
    polys: Vec<OPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn new(order: &'a MonomialOrder, opts: StdOptions) -> Self {
        Engine { order, opts, steps: 0, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.opts.max_steps {
            return Err(Error::ResourceLimit(format!(
                "standard basis computation exceeded {} reduction steps",
                self.opts.max_steps
            )));
        }
        Ok(())
    }

    /// Top-reduction by the active basis (global orders only).
    fn top_reduce(&mut self, mut h: OPoly) -> Result<OPoly> {
        while !h.is_zero() {
            let Some(g) = self.find_divisor(h.lm(), |_| true) else { break };
            self.tick()?;
            let g = &self.polys[g];
            let m = g.lm().quotient_of(h.lm()).expect("divisor");
            let k = h.lc() / g.lc();
            h = h.sub_mul(&k, &m, g, self.order);
        }
        Ok(h)
    }

    fn find_divisor(&self, lm: &Monomial, allow: impl Fn(usize) -> bool) -> Option<usize> {
        (0..self.polys.len()).find(|&i| self.active[i] && allow(i) && self.polys[i].lm().divides(lm))
    }

    /// Mora's weak normal form against the reducer list `base`.
    fn mora_nf(&mut self, h: OPoly, base: &[usize]) -> Result<OPoly> {
        let mut h = h;
        let mut extra: Vec<OPoly> = Vec::new();
        let mut stored = 0usize;
        while !h.is_zero() {
            // candidates: minimal écart, then smallest leading monomial, then index
            let mut best: Option<(u32, &OPoly, usize)> = None;
            let candidates = base
                .iter()
                .map(|&i| &self.polys[i])
                .chain(extra.iter())
                .enumerate();
            for (idx, g) in candidates {
                if !g.lm().divides(h.lm()) {
                    continue;
                }
                let e = g.ecart();
                let better = match &best {
                    None => true,
                    Some((be, bg, _)) => {
                        e < *be || (e == *be && self.order.cmp(g.lm(), bg.lm()) == Ordering::Less)
                    }
                };
                if better {
                    best = Some((e, g, idx));
                }
            }
            let Some((ecart, g, _)) = best else { break };
            let g = g.clone();
            self.tick()?;
            // h = u f - sum a_i g_i with u a unit; reducing later remainders by h
            // keeps u a unit since their leading monomials are smaller.
            // Under truncation leading monomials strictly descend through a
            // finite set, so plain reduction terminates without T.
            if self.opts.truncate_degree.is_none() && ecart >= h.ecart() {
                stored += h.terms.len();
                if stored > self.opts.max_stored_terms {
                    return Err(Error::ResourceLimit(format!(
                        "weak normal form holds more than {} terms",
                        self.opts.max_stored_terms
                    )));
                }
                extra.push(h.clone());
            }
            let m = g.lm().quotient_of(h.lm()).expect("divisor");
            let k = h.lc() / g.lc();
            h = h.sub_mul(&k, &m, &g, self.order).truncate(self.opts.truncate_degree);
        }
        Ok(h)
    }

    /// Gebauer–Möller update after inserting the new element `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.polys[h].lm().clone();
        let olds: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let cand: Vec<Pair> = olds
            .iter()
            .map(|&g| Pair { i: g, j: h, lcm: self.polys[g].lm().lcm(&lm_h) })
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in cand.iter().enumerate() {
            let coprime = self.polys[p.i].lm().is_coprime(&lm_h);
            let dominated = cand.iter().enumerate().any(|(o, q)| {
                o != idx && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || o < idx)
            });
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        let kept: Vec<Pair> = {
            // among equal lcms keep one, preferring a coprime one
            let mut out: Vec<Pair> = Vec::new();
            for p in kept {
                if out.iter().any(|q| q.lcm == p.lcm) {
                    continue;
                }
                out.push(p);
            }
            out.into_iter()
                .filter(|p| !self.polys[p.i].lm().is_coprime(&lm_h))
                .collect()
        };

        // drop old pairs whose lcm is strictly dominated through h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && polys[p.i].lm().lcm(&lm_h) != p.lcm
                && polys[p.j].lm().lcm(&lm_h) != p.lcm)
        });
        self.pairs.extend(kept);

        for g in olds {
            if lm_h.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&self.pairs[a], &self.pairs[b]);
                p.lcm
                    .degree()
                    .cmp(&q.lcm.degree())
                    .then_with(|| order.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .expect("nonempty");
        Some(self.pairs.swap_remove(best))
    }

    fn insert(&mut self, mut h: OPoly) -> usize {
        h.make_monic();
        self.polys.push(h);
        self.active.push(true);
        let idx = self.polys.len() - 1;
        self.update(idx);
        idx
    }

    fn run(&mut self, gens: Vec<OPoly>) -> Result<()> {
        let local = self.order.is_local();
        let bound = self.opts.truncate_degree;
        for g in gens {
            let g = g.truncate(bound);
            let h = if local {
                // all polynomials seen so far serve as reducers
                let base: Vec<usize> = (0..self.polys.len()).collect();
                self.mora_nf(g, &base)?
            } else {
                self.top_reduce(g)?
            };
            if !h.is_zero() {
                self.insert(h);
            }
        }
        while let Some(pair) = self.pop_pair() {
            let s = spoly(&self.polys[pair.i], &self.polys[pair.j], self.order).truncate(bound);
            let h = if local {
                let base: Vec<usize> = (0..self.polys.len()).collect();
                self.mora_nf(s, &base)?
            } else {
                self.top_reduce(s)?
            };
            if !h.is_zero() {
                self.insert(h);
            }
        }
        Ok(())
    }

    /// Minimal basis: active elements whose leading monomial is not divisible
    /// by another one (ties broken by insertion index).
    fn minimal(&self) -> Vec<OPoly> {
        let idx: Vec<usize> = (0..self.polys.len()).filter(|&i| self.active[i]).collect();
        idx.iter()
            .filter(|&&i| {
                !idx.iter().any(|&j| {
                    j != i
                        && self.polys[j].lm().divides(self.polys[i].lm())
                        && (self.polys[j].lm() != self.polys[i].lm() || j < i)
                })
            })
            .map(|&i| self.polys[i].clone())
            .collect()
    }
}

/// Full reduction of every term of `h` (global orders).
fn full_reduce(h: OPoly, basis: &[OPoly], order: &MonomialOrder) -> OPoly {
    let mut rest = h;
    let mut done: Terms = Vec::new();
    while !rest.is_zero() {
        match basis.iter().find(|g| g.lm().divides(rest.lm())) {
            Some(g) => {
                let m = g.lm().quotient_of(rest.lm()).expect("divisor");
                let k = rest.lc() / g.lc();
                rest = rest.sub_mul(&k, &m, g, order);
            }
            None => {
                done.push(rest.terms.remove(0));
            }
        }
    }
    OPoly::from_terms(done)
}

/// Tail reduction restricted to terms of the same degree as the leading
/// term; for homogeneous input this is full interreduction.
fn reduce_within_degree(h: OPoly, basis: &[OPoly], order: &MonomialOrder) -> OPoly {
    let deg = h.lm().degree();
    let mut out: Terms = vec![h.terms[0].clone()];
    let mut rest = OPoly::from_terms(h.terms[1..].to_vec());
    while !rest.is_zero() {
        if rest.lm().degree() != deg {
            out.push(rest.terms.remove(0));
            continue;
        }
        match basis.iter().find(|g| g.lm().divides(rest.lm()) && g.lm().degree() == deg && g.ecart() == 0) {
            Some(g) => {
                let m = g.lm().quotient_of(rest.lm()).expect("divisor");
                let k = rest.lc() / g.lc();
                rest = rest.sub_mul(&k, &m, g, order);
            }
            None => out.push(rest.terms.remove(0)),
        }
    }
    OPoly::from_terms(out)
}

fn sort_output(mut basis: Vec<OPoly>, order: &MonomialOrder) -> Vec<OPoly> {
    basis.sort_by(|a, b| {
        a.lm().degree().cmp(&b.lm().degree()).then_with(|| order.cmp(b.lm(), a.lm()))
    });
    basis
}

fn common_vars(gens: &[Poly]) -> Result<Option<Arc<VarSet>>> {
    let Some(first) = gens.first() else { return Ok(None) };
    if gens.iter().any(|g| !g.same_vars(first)) {
        return Err(Error::VarsetMismatch);
    }
    Ok(Some(first.vars().clone()))
}

pub fn groebner_basis(gens: &[Poly], order: &MonomialOrder) -> Result<Vec<Poly>> {
    groebner_basis_with(gens, order, StdOptions::default())
}

/// Reduced Gröbner basis for a global order, sorted by leading monomial
/// (lowest degree first).
pub fn groebner_basis_with(gens: &[Poly], order: &MonomialOrder, opts: StdOptions) -> Result<Vec<Poly>> {
    if !order.is_global() {
        return Err(Error::InvalidInput("Gröbner bases require a global order".into()));
    }
    if opts.truncate_degree.is_some() {
        return Err(Error::InvalidInput("degree truncation applies to local orders only".into()));
    }
    let Some(vars) = common_vars(gens)? else { return Ok(Vec::new()) };
    let mut engine = Engine::new(order, opts);
    engine.run(gens.iter().filter(|g| !g.is_zero()).map(|g| OPoly::new(g, order)).collect())?;
    let minimal = engine.minimal();
    let reduced: Vec<OPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<OPoly> =
                minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            let head = OPoly::from_terms(vec![minimal[i].terms[0].clone()]);
            let tail = OPoly::from_terms(minimal[i].terms[1..].to_vec());
            let mut terms = head.terms;
            terms.extend(full_reduce(tail, &others, order).terms);
            let mut p = OPoly::from_terms(terms);
            p.make_monic();
            p
        })
        .collect();
    Ok(sort_output(reduced, order).iter().map(|p| p.to_poly(&vars)).collect())
}

pub fn mora_standard_basis(gens: &[Poly], order: &MonomialOrder) -> Result<Vec<Poly>> {
    mora_standard_basis_with(gens, order, StdOptions::default())
}

/// Standard basis of the ideal generated by `gens` in the localization at the
/// origin, for the local order.
///
/// The basis is minimal; homogeneous elements are additionally interreduced
/// within their degree so homogeneous input yields the reduced basis.
pub fn mora_standard_basis_with(gens: &[Poly], order: &MonomialOrder, opts: StdOptions) -> Result<Vec<Poly>> {
    if !order.is_local() {
        return Err(Error::InvalidInput("Mora's algorithm requires a local order".into()));
    }
    let Some(vars) = common_vars(gens)? else { return Ok(Vec::new()) };
    let mut engine = Engine::new(order, opts);
    engine.run(gens.iter().filter(|g| !g.is_zero()).map(|g| OPoly::new(g, order)).collect())?;
    let minimal = engine.minimal();
    let reduced: Vec<OPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<OPoly> =
                minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            let mut p = reduce_within_degree(minimal[i].clone(), &others, order);
            p.make_monic();
            p
        })
        .collect();
    Ok(sort_output(reduced, order).iter().map(|p| p.to_poly(&vars)).collect())
}

/// Fully reduced normal form with respect to a global order.
pub fn normal_form(f: &Poly, basis: &[Poly], order: &MonomialOrder) -> Result<Poly> {
    if !order.is_global() {
        return Err(Error::InvalidInput("normal_form requires a global order".into()));
    }
    if basis.iter().any(|g| !g.same_vars(f)) {
        return Err(Error::VarsetMismatch);
    }
    let base: Vec<OPoly> = basis.iter().filter(|g| !g.is_zero()).map(|g| OPoly::new(g, order)).collect();
    Ok(full_reduce(OPoly::new(f, order), &base, order).to_poly(f.vars()))
}

/// Mora's weak normal form: zero iff `f` lies in the local ideal, provided
/// `basis` is a standard basis.
pub fn mora_normal_form(f: &Poly, basis: &[Poly], order: &MonomialOrder) -> Result<Poly> {
    mora_normal_form_with(f, basis, order, StdOptions::default())
}

pub fn mora_normal_form_with(f: &Poly, basis: &[Poly], order: &MonomialOrder, opts: StdOptions) -> Result<Poly> {
    if !order.is_local() {
        return Err(Error::InvalidInput("mora_normal_form requires a local order".into()));
    }
    if basis.iter().any(|g| !g.same_vars(f)) {
        return Err(Error::VarsetMismatch);
    }
    let mut engine = Engine::new(order, opts);
    for g in basis.iter().filter(|g| !g.is_zero()) {
        engine.polys.push(OPoly::new(g, order));
        engine.active.push(true);
    }
    let base: Vec<usize> = (0..engine.polys.len()).collect();
    Ok(engine.mora_nf(OPoly::new(f, order), &base)?.to_poly(f.vars()))
}

/// Leading monomials of `polys` (zero polynomials skipped).
pub fn leading_monomials(polys: &[Poly], order: &MonomialOrder) -> Vec<Monomial> {
    polys.iter().filter_map(|p| p.leading_term(order).map(|(m, _)| m.clone())).collect()
}

/// Initial forms (lowest-degree homogeneous parts) of a standard basis of the
/// local ideal at the origin; together they generate the initial ideal.
pub fn initial_ideal(gens: &[Poly]) -> Result<Vec<Poly>> {
    initial_ideal_with(gens, StdOptions::default())
}

pub fn initial_ideal_with(gens: &[Poly], opts: StdOptions) -> Result<Vec<Poly>> {
    let basis = mora_standard_basis_with(gens, &MonomialOrder::antigrlex(), opts)?;
    Ok(basis.iter().map(|p| p.initial_form()).collect())
}

/// The polynomial `S(f, g)` under `order`, exposed for post-checks.
pub fn s_polynomial(f: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let (a, b) = (OPoly::new(f, order), OPoly::new(g, order));
    spoly(&a, &b, order).to_poly(f.vars())
}

impl From<Rational> for OPoly {
    fn from(c: Rational) -> Self {
        OPoly::from_terms(if c.is_zero() { vec![] } else { vec![(Monomial::one(), c)] })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn ps(vars: &Arc<VarSet>, src: &[&str]) -> Vec<Poly> {
        src.iter().map(|s| parse_poly(s, vars).unwrap()).collect()
    }

    #[test]
    fn already_reduced_basis() {
        let v = VarSet::from_names(&["x", "y"]).unwrap();
        let gb = groebner_basis(&ps(&v, &["x", "y"]), &MonomialOrder::grevlex()).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gb.contains(&parse_poly("x", &v).unwrap()));
        assert!(gb.contains(&parse_poly("y", &v).unwrap()));
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let v = VarSet::from_names(&["x"]).unwrap();
        assert!(groebner_basis(&[Poly::zero(&v)], &MonomialOrder::grevlex()).unwrap().is_empty());
        assert!(mora_standard_basis(&[Poly::zero(&v)], &MonomialOrder::antigrlex()).unwrap().is_empty());
    }

    #[test]
    fn rejects_wrong_order_kind() {
        let v = VarSet::from_names(&["x"]).unwrap();
        let g = ps(&v, &["x"]);
        assert!(groebner_basis(&g, &MonomialOrder::antigrlex()).is_err());
        assert!(mora_standard_basis(&g, &MonomialOrder::grevlex()).is_err());
    }

    #[test]
    fn lex_elimination() {
        let v = VarSet::from_names(&["x", "y"]).unwrap();
        let gb = groebner_basis(&ps(&v, &["x^2 - y", "x*y - 1"]), &MonomialOrder::lex()).unwrap();
        assert!(gb.contains(&parse_poly("y^3 - 1", &v).unwrap()));
    }

    #[test]
    fn unit_in_local_ring() {
        let v = VarSet::from_names(&["x"]).unwrap();
        let sb = mora_standard_basis(&ps(&v, &["1 + x"]), &MonomialOrder::antigrlex()).unwrap();
        assert_eq!(sb.len(), 1);
        assert!(sb[0].leading_term(&MonomialOrder::antigrlex()).unwrap().0.is_one());
    }

    #[test]
    fn local_leading_term_of_x_minus_x2() {
        let v = VarSet::from_names(&["x"]).unwrap();
        let sb = mora_standard_basis(&ps(&v, &["x - x^2"]), &MonomialOrder::antigrlex()).unwrap();
        let lms = leading_monomials(&sb, &MonomialOrder::antigrlex());
        assert_eq!(lms, vec![Monomial::var(0)]);
        assert_eq!(initial_ideal(&ps(&v, &["x - x^2"])).unwrap(), ps(&v, &["x"]));
    }

    #[test]
    fn initial_ideal_of_cusp_like_pair() {
        let v = VarSet::from_names(&["x", "y"]).unwrap();
        let ini = initial_ideal(&ps(&v, &["y - x^2", "x^3"])).unwrap();
        assert_eq!(ini, ps(&v, &["y", "x^3"]));
    }

    #[test]
    fn resource_limit_trips() {
        let v = VarSet::from_names(&["x", "y", "z"]).unwrap();
        let g = ps(&v, &["x^2*y - z^3", "x*y^2 - z", "x^3 - y*z + 1"]);
        let r = groebner_basis_with(&g, &MonomialOrder::grevlex(), StdOptions::with_max_steps(3));
        assert!(matches!(r, Err(Error::ResourceLimit(_))));
    }
}
