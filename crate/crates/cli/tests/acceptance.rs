//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use arcspace::drinfeld::{
    construct_drinfeld, jet_cotangent_matrix, verify_drinfeld_dims_with, verify_drinfeld_edim, DimsOptions,
    GenericityOptions,
};
use arcspace::jets::{hs_derivatives, AffineScheme, FormalArc, JetSpace};
use arcspace::localgeom::{ecodim_at_point, ecodim_window, LocalAnalysis};
use arcspace::polyalg::{
    div_monic_t, groebner_basis, initial_ideal, leading_monomials, linalg, monomial_dim, mora_normal_form,
    mora_standard_basis, normal_form, q, regularize, s_polynomial, weierstrass_divide, Monomial, MonomialOrder, Poly,
    Rational, TPoly, VarId, VarSet,
};
use arcspace::Error;
use arcspace_cli::{drinfeld_cmd, ecodim_cmd, ord_cmd, EcodimReport, Job, JobDocument, OrdTarget, Settings};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn job(name: &str) -> Job {
    JobDocument::read(&fixture(name)).unwrap().into_job(None).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e <= budget, || format!("{what} took {e:.1?}, budget {budget:?}"))
}

fn quadric_line(power: usize) -> (AffineScheme, FormalArc) {
    let x = AffineScheme::parse(&["x0", "x1", "x2", "x3"], &["x0*x3 + x1*x2"], Some(3)).unwrap();
    let t = format!("t^{power}");
    (x, FormalArc::parse(&[t.as_str(), "0", "0", "0"], None).unwrap())
}

fn ord_of(j: &Job) -> String {
    ord_cmd(j, OrdTarget::Jacobian, &Settings::default()).unwrap().ord
}

fn window_of(j: &Job, a: usize, b: usize) -> arcspace::Result<(Vec<usize>, bool)> {
    let s = Settings { window: Some((a, b)), ..Settings::default() };
    match ecodim_cmd(j, &s) {
        Ok(EcodimReport::Window(w)) => Ok((w.ecodims, w.stabilized)),
        Ok(EcodimReport::Level(_)) => unreachable!("a window was requested"),
        Err(arcspace_cli::CliError::Core(e)) => Err(e),
        Err(e) => panic!("{e}"),
    }
}

fn first_example() -> Outcome {
    let t = Instant::now();
    let j = job("quadric_line.json");
    let ord = ord_of(&j);
    ensure(ord == "1", || format!("ord = {ord}"))?;
    let (ecodims, stable) = window_of(&j, 2, 4).map_err(|e| e.to_string())?;
    ensure(stable && ecodims.last() == Some(&1), || format!("ecodims {ecodims:?}"))?;
    let (r, _) = drinfeld_cmd(&j, &Settings::default()).map_err(|e| e.to_string())?;
    ensure(r.m == 8 && r.edim == 6 && r.edim == 2 * r.d * r.e, || format!("m {} edim {}", r.m, r.edim))?;
    ensure(r.dim == 5 && r.dim_bounds == [5, 6] && r.ecodim == 1, || format!("dim {} ecodim {}", r.dim, r.ecodim))?;
    within(t, Duration::from_secs(30), "the pipeline")?;
    Ok(format!("ord 1, ecodim 1, m 8, edim 6, dim 5 in [5, 6] ({:.2?})", t.elapsed()))
}

fn second_example() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    for (m, file) in [(1, "quadric_line.json"), (2, "quadric_line_m2.json"), (3, "quadric_line_m3.json")] {
        let j = job(file);
        let ord = ord_of(&j);
        ensure(ord == m.to_string(), || format!("m = {m}: ord = {ord}"))?;
        let (a, b) = (2 * m, 2 * m + 2);
        match window_of(&j, a, b) {
            Ok((ecodims, stable)) => {
                ensure(stable && ecodims.iter().all(|&v| v == m), || format!("m = {m}: ecodims {ecodims:?}"))?;
                notes.push(format!("m={m}: {ecodims:?} on [{a},{b}]"));
            }
            Err(Error::ResourceLimit(why)) if m == 3 => {
                let (ecodims, _) = window_of(&j, a, a).map_err(|e| e.to_string())?;
                ensure(ecodims == [m], || format!("m = 3 at level {a}: {ecodims:?}"))?;
                notes.push(format!("DEGRADED m=3 to level {a} only ({why}): {ecodims:?}"));
            }
            Err(e) => return Err(format!("m = {m}: {e}")),
        }
    }
    within(t, Duration::from_secs(300), "the three windows")?;
    Ok(format!("{} ({:.2?})", notes.join("; "), t.elapsed()))
}

fn edim_law() -> Outcome {
    let cases = [("quadric_line.json", 6), ("quadric_line_m2.json", 12), ("two_quadrics.json", 8)];
    let mut notes = Vec::new();
    for (file, expected) in cases {
        let t = Instant::now();
        let j = job(file);
        for seed in 1..=5 {
            let run = construct_drinfeld(&j.scheme, &j.arc, seed, GenericityOptions::default())
                .map_err(|e| format!("{file}, seed {seed}: {e}"))?;
            let edim = verify_drinfeld_edim(&run.model).map_err(|e| format!("{file}, seed {seed}: {e}"))?;
            ensure(edim == expected, || format!("{file}, seed {seed}: edim {edim}"))?;
        }
        within(t, Duration::from_secs(60), file)?;
        notes.push(format!("{file}: 2de = {expected}"));
    }
    Ok(format!("{}, seeds 1..=5", notes.join(", ")))
}

fn jet_injectivity() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for file in ["quadric_line.json", "quadric_line_m2.json", "quadric_line_m3.json", "two_quadrics.json"] {
        let j = job(file);
        let run = construct_drinfeld(&j.scheme, &j.arc, 1, GenericityOptions::default()).map_err(|e| e.to_string())?;
        let d = run.model.d();
        for n in 0..=6 {
            let map = jet_cotangent_matrix(&j.scheme, run.model.projection(), &j.arc, n).map_err(|e| e.to_string())?;
            ensure(map.rank == d * (n + 1), || format!("{file}, n = {n}: rank {} < {}", map.rank, d * (n + 1)))?;
            checked += 1;
        }
    }
    within(t, Duration::from_secs(60), "the rank computations")?;
    Ok(format!("{checked} maps of full rank d(n+1), n <= 6 ({:.2?})", t.elapsed()))
}

fn divergence() -> Outcome {
    let j = job("node_constant_arc.json");
    let (ecodims, stable) = window_of(&j, 0, 4).map_err(|e| e.to_string())?;
    ensure(ecodims.windows(2).all(|w| w[0] < w[1]) && !stable, || format!("ecodims {ecodims:?}"))?;
    Ok(format!("ecodims {ecodims:?} over levels 0..4"))
}

fn random_poly(vars: &Arc<VarSet>, rng: &mut ChaCha8Rng, terms: usize, lo: u32, hi: u32) -> Poly {
    (0..terms).fold(Poly::zero(vars), |acc, _| {
        let mut exps = vec![0u32; vars.len()];
        for _ in 0..rng.gen_range(lo..=hi) {
            exps[rng.gen_range(0..vars.len())] += 1;
        }
        let c = [-5, -3, -2, -1, 1, 2, 4, 7][rng.gen_range(0..8)];
        &acc + &Poly::monomial(vars, Monomial::from_dense(&exps), q(c))
    })
}

/// `t^p` coefficient of `f(sum_j x^{(j)} s^j)` by substitution.
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

fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    if n == 0 {
        return if k == 0 { vec![Monomial::one()] } else { Vec::new() };
    }
    (0..=k)
        .flat_map(|e| monomials_of_degree(n - 1, k - e).into_iter().map(move |m| m.mul(&Monomial::var_pow(n - 1, e))))
        .collect()
}

/// Hilbert function up to `top` of the lowest-degree forms of the ideal,
/// read off an echelon form over monomials sorted by degree.
fn initial_hilbert_by_elimination(gens: &[Poly], nvars: usize, top: u32) -> Vec<usize> {
    let cols: Vec<Monomial> = (0..=top).flat_map(|k| monomials_of_degree(nvars, k)).collect();
    let mut rows = Vec::new();
    for g in gens {
        for a in &cols {
            let row: Vec<Rational> =
                cols.iter().map(|m| a.quotient_of(m).map_or_else(Rational::zero, |b| g.coefficient(&b))).collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let (_, pivots) = linalg::rref(&rows);
    (0..=top).map(|k| pivots.iter().filter(|&&p| cols[p].degree() == k).count()).collect()
}

fn hilbert_of_forms(forms: &[Poly], nvars: usize, top: u32) -> Vec<usize> {
    (0..=top)
        .map(|k| {
            let basis = monomials_of_degree(nvars, k);
            let mut rows = Vec::new();
            for h in forms {
                let Some(dh) = h.total_degree().filter(|&dh| dh <= k) else { continue };
                for a in monomials_of_degree(nvars, k - dh) {
                    let p = h.mul_monomial(&a, &Rational::one());
                    rows.push(basis.iter().map(|m| p.coefficient(m)).collect::<Vec<_>>());
                }
            }
            linalg::rank(&rows)
        })
        .collect()
}

/// Both formulas for ecodim, the second via a global basis of the initial forms.
fn concordant(a: &LocalAnalysis) -> bool {
    let grevlex = MonomialOrder::grevlex();
    let gb = groebner_basis(&a.initial_forms, &grevlex).unwrap();
    let dim = monomial_dim(&leading_monomials(&gb, &grevlex), a.nvars);
    dim == a.tangent_cone_dim && a.edim == a.nvars - a.jacobian_rank && a.ecodim == a.edim - dim
}

fn property_suites() -> Outcome {
    let t = Instant::now();
    let xyz = VarSet::from_names(&["x", "y", "z"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let space = JetSpace::new(&xyz, 6).unwrap();
    for _ in 0..20 {
        let f = random_poly(&xyz, &mut rng, 4, 0, 4);
        for (p, d) in hs_derivatives(&f, 6, &space).unwrap().iter().enumerate() {
            ensure(d == &coefficient_extraction(&f, &space, p), || format!("D_{p}({f})"))?;
        }
    }

    let space5 = JetSpace::new(&xyz, 5).unwrap();
    for _ in 0..8 {
        let g = random_poly(&xyz, &mut rng, 4, 0, 4);
        let dg = hs_derivatives(&g, 5, &space5).unwrap();
        for i in 0..3 {
            let dpart = hs_derivatives(&g.partial_derivative(i), 5, &space5).unwrap();
            for p in 0..=5 {
                for k in 0..=p {
                    let lhs = dg[p].partial_derivative(space5.var(i, k));
                    ensure(lhs == dpart[p - k], || format!("chain rule for {g}, p {p}, k {k}"))?;
                }
            }
        }
    }

    for order in [MonomialOrder::grevlex(), MonomialOrder::grlex()] {
        for _ in 0..6 {
            let gens: Vec<Poly> = (0..3).map(|_| random_poly(&xyz, &mut rng, 3, 0, 3)).collect();
            let gb = groebner_basis(&gens, &order).unwrap();
            ensure(gens.iter().all(|g| normal_form(g, &gb, &order).unwrap().is_zero()), || "generator NF".into())?;
            for (i, f) in gb.iter().enumerate() {
                for g in &gb[i + 1..] {
                    let r = normal_form(&s_polynomial(f, g, &order), &gb, &order).unwrap();
                    ensure(r.is_zero(), || "Groebner S-pair NF".into())?;
                }
            }
        }
    }
    let local = MonomialOrder::antigrlex();
    for _ in 0..8 {
        let gens: Vec<Poly> = (0..2).map(|_| random_poly(&xyz, &mut rng, 3, 1, 3)).collect();
        let sb = mora_standard_basis(&gens, &local).unwrap();
        ensure(gens.iter().all(|g| mora_normal_form(g, &sb, &local).unwrap().is_zero()), || "Mora NF".into())?;
        for (i, f) in sb.iter().enumerate() {
            for g in &sb[i + 1..] {
                let r = mora_normal_form(&s_polynomial(f, g, &local), &sb, &local).unwrap();
                ensure(r.is_zero(), || "Mora S-pair NF".into())?;
            }
        }
    }

    for _ in 0..10 {
        let gens: Vec<Poly> = (0..2).map(|_| random_poly(&xyz, &mut rng, 3, 1, 4)).collect();
        let ini = initial_ideal(&gens).unwrap();
        ensure(hilbert_of_forms(&ini, 3, 4) == initial_hilbert_by_elimination(&gens, 3, 4), || {
            format!("initial ideal of {gens:?}")
        })?;
    }

    for _ in 0..16 {
        let f = random_poly(&xyz, &mut rng, 4, 1, 3);
        let g = random_poly(&xyz, &mut rng, 4, 0, 4);
        if f.is_zero() {
            continue;
        }
        let reg = regularize(&f, 2).unwrap();
        let (f, g) = (reg.apply(&f), reg.apply(&g));
        let div = weierstrass_divide(&g, &f, 2, 3).unwrap();
        let back = &(&div.quotient * &f) + &div.remainder;
        ensure(div.truncation.apply(&(&g - &back)).is_zero(), || format!("Weierstrass {g} by {f}"))?;
    }
    let ab = VarSet::from_names(&["a", "b"]).unwrap();
    for _ in 0..16 {
        let g = TPoly::new(&ab, (0..6).map(|_| random_poly(&ab, &mut rng, 3, 0, 2)).collect());
        let mut mc: Vec<Poly> = (0..rng.gen_range(0..4)).map(|_| random_poly(&ab, &mut rng, 2, 0, 1)).collect();
        mc.push(Poly::one(&ab));
        let m = TPoly::new(&ab, mc);
        let (quot, rem) = div_monic_t(&g, &m).unwrap();
        ensure(quot.mul(&m).add(&rem) == g, || "monic division".into())?;
    }

    let mut analyses = Vec::new();
    for (vars, gens, point) in [
        (&["x", "y"][..], &["y^2 - x^3"][..], &[0, 0][..]),
        (&["x", "y", "z"], &["x*y", "y*z", "x*z"], &[0, 0, 0]),
        (&["x", "y", "z"], &["x^2 + y^2 + z^2 - 3"], &[1, 1, 1]),
    ] {
        let x = AffineScheme::parse(vars, gens, None).unwrap();
        let p: Vec<Rational> = point.iter().map(|&c| q(c)).collect();
        analyses.push(ecodim_at_point(x.generators(), &p).unwrap());
    }
    for m in 1..=2 {
        let (x, a) = quadric_line(m);
        analyses.extend(ecodim_window(&x, &a, 2 * m, 2 * m + 2).unwrap().levels);
        let run = construct_drinfeld(&x, &a, 1, GenericityOptions::default()).unwrap();
        analyses.push(verify_drinfeld_dims_with(&run.model, DimsOptions::default()).unwrap());
    }
    let j = job("node_constant_arc.json");
    analyses.extend(ecodim_window(&j.scheme, &j.arc, 0, 4).unwrap().levels);
    ensure(analyses.iter().all(concordant), || "two-formula ecodim disagreement".into())?;

    within(t, Duration::from_secs(120), "the property suites")?;
    Ok(format!(
        "HS oracle, chain rule, Groebner/Mora post-checks, initial ideal to degree 4, divisions, {} concordant points ({:.2?})",
        analyses.len(),
        t.elapsed()
    ))
}

fn reproducibility() -> Outcome {
    let runs: [&[&str]; 3] = [
        &["drinfeld", "quadric_line.json", "--seed", "5"],
        &["drinfeld", "quadric_line_m2.json", "--seed", "2"],
        &["verify-dgk", "quadric_line.json"],
    ];
    for args in runs {
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full[1] = fixture(args[1]).display().to_string();
        let once = || Command::new(env!("CARGO_BIN_EXE_arcspace")).args(&full).env_remove("ARCSPACE_SEED").output();
        let (a, b) = (once().map_err(|e| e.to_string())?, once().map_err(|e| e.to_string())?);
        ensure(a.status.success() && b.status.success(), || format!("{args:?} failed"))?;
        ensure(a.stdout == b.stdout, || format!("{args:?}: outputs differ"))?;
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("quadric along a line", first_example),
        ("higher contact orders", second_example),
        ("Drinfeld edim law", edim_law),
        ("jet cotangent injectivity", jet_injectivity),
        ("singular-locus divergence", divergence),
        ("property suites", property_suites),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
