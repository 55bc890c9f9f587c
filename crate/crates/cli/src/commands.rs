//! The subcommands as functions from a validated job to a serializable report.

use arcspace::drinfeld::{
    construct_drinfeld, dim_bounds, drinfeld_report, drinfeld_tangent_check, jet_cotangent_map, verify_drinfeld_dims_with,
    verify_drinfeld_edim, DimsOptions, DrinfeldReport, DrinfeldRun, GenericityOptions,
};
use arcspace::jets::{finiteness_warning, jacobian_ideal, jet_ideal, ord_along_arc};
use arcspace::localgeom::{default_window, ecodim_jet, ecodim_window, LocalRecord};
use arcspace::polyalg::{q, OrdResult};
use arcspace::Error;
use serde::Serialize;

use crate::document::Job;
use crate::error::CliError;

/// Built-in seed when neither flag, document nor environment supplies one.
pub const DEFAULT_SEED: u64 = 1;
pub const SEED_ENV: &str = "ARCSPACE_SEED";

/// Command-line values; each one, when present, beats the document.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub level: Option<usize>,
    pub window: Option<(usize, usize)>,
    pub seed: Option<u64>,
    pub trunc_degree: Option<u32>,
    pub resample_limit: Option<usize>,
}

/// Flag, then document, then environment, then [`DEFAULT_SEED`].
pub fn resolve_seed(flag: Option<u64>, doc: Option<u64>, env: Option<&str>) -> Result<u64, CliError> {
    if let Some(s) = flag.or(doc) {
        return Ok(s);
    }
    match env {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Document(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        None => Ok(DEFAULT_SEED),
    }
}

/// Resolved settings for one invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub level: Option<usize>,
    pub window: Option<(usize, usize)>,
    pub seed: u64,
    pub genericity: GenericityOptions,
    pub dims: DimsOptions,
}

impl Settings {
    pub fn resolve(job: &Job, o: Overrides, env_seed: Option<&str>) -> Result<Self, CliError> {
        let doc = &job.options;
        let mut genericity = GenericityOptions::default();
        if let Some(r) = o.resample_limit.or(doc.resample_limit) {
            genericity.resample_limit = r;
        }
        if let Some(cap) = doc.precision_cap {
            genericity.precision_cap = cap;
        }
        let mut dims = DimsOptions::default();
        if let Some(t) = o.trunc_degree.or(doc.trunc_degree) {
            dims.max_truncation = t;
        }
        let window = o.window.or(doc.window.map(|[a, b]| (a, b)));
        if let Some((a, b)) = window {
            if b < a {
                return Err(CliError::Document(format!("empty window {a}:{b}")));
            }
        }
        Ok(Settings {
            level: o.level.or(doc.level),
            window,
            seed: resolve_seed(o.seed, doc.seed, env_seed)?,
            genericity,
            dims,
        })
    }

    fn cap(&self) -> usize {
        self.genericity.precision_cap
    }
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            level: None,
            window: None,
            seed: DEFAULT_SEED,
            genericity: GenericityOptions::default(),
            dims: DimsOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JetIdealReport {
    pub level: usize,
    pub generators: Vec<String>,
}

pub fn jet_ideal_cmd(job: &Job, level: usize) -> Result<JetIdealReport, CliError> {
    let (ideal, _) = jet_ideal(&job.scheme, level)?;
    Ok(JetIdealReport { level, generators: ideal.iter().map(ToString::to_string).collect() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OrdTarget {
    Generators,
    Jacobian,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrdReport {
    pub target: OrdTarget,
    pub ord: String,
    /// False when only a lower bound is known.
    pub exact: bool,
}

pub fn ord_cmd(job: &Job, target: OrdTarget, s: &Settings) -> Result<OrdReport, CliError> {
    let ideal = match target {
        OrdTarget::Generators => job.scheme.generators().to_vec(),
        OrdTarget::Jacobian => jacobian_ideal(&job.scheme, job.scheme.require_dim()?)?,
    };
    let ord = ord_along_arc(&ideal, &job.arc, s.cap())?;
    Ok(OrdReport { target, ord: ord.to_string(), exact: !matches!(ord, OrdResult::Exhausted(_)) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    #[serde(flatten)]
    pub record: LocalRecord,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub window: [usize; 2],
    pub levels: Vec<LevelReport>,
    pub ecodims: Vec<usize>,
    pub ecodim: usize,
    pub stabilized: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum EcodimReport {
    Level(LevelReport),
    Window(WindowReport),
}

fn warnings(job: &Job, s: &Settings) -> Result<Vec<String>, CliError> {
    Ok(finiteness_warning(&job.scheme, &job.arc, s.cap())?.into_iter().collect())
}

/// The default window `[2e, 2e+2]` needs a finite contact order `e`.
fn window_for(job: &Job, s: &Settings) -> Result<(usize, usize), CliError> {
    if let Some(w) = s.window {
        return Ok(w);
    }
    let d = job.scheme.require_dim()?;
    match ord_along_arc(&jacobian_ideal(&job.scheme, d)?, &job.arc, s.cap())? {
        OrdResult::Exact(e) => Ok(default_window(e)),
        other => Err(Error::InvalidInput(format!(
            "the Jacobian ideal has order {other} along the arc; pass an explicit window"
        ))
        .into()),
    }
}

/// One level when a level is set, otherwise a window.
pub fn ecodim_cmd(job: &Job, s: &Settings) -> Result<EcodimReport, CliError> {
    let warnings = warnings(job, s)?;
    if let (Some(n), None) = (s.level, s.window) {
        let record = ecodim_jet(&job.scheme, &job.arc, n)?.record(false);
        return Ok(EcodimReport::Level(LevelReport { level: n, record, warnings }));
    }
    let (a, b) = window_for(job, s)?;
    let w = ecodim_window(&job.scheme, &job.arc, a, b)?;
    let stabilized = w.stabilized();
    let levels = w
        .levels
        .iter()
        .enumerate()
        .map(|(k, l)| LevelReport { level: a + k, record: l.record(stabilized), warnings: Vec::new() })
        .collect();
    Ok(EcodimReport::Window(WindowReport {
        window: [a, b],
        levels,
        ecodims: w.ecodims(),
        ecodim: w.value(),
        stabilized,
        warnings,
    }))
}

/// The verified report and the run it came from.
pub fn drinfeld_cmd(job: &Job, s: &Settings) -> Result<(DrinfeldReport, DrinfeldRun), CliError> {
    let run = construct_drinfeld(&job.scheme, &job.arc, s.seed, s.genericity)?;
    let report = drinfeld_report(&run, s.dims)?;
    Ok((report, run))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

struct Checks(Vec<Check>);

impl Checks {
    fn record(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> bool {
        self.0.push(Check { name: name.into(), pass, detail: detail.into() });
        pass
    }

    /// Assertion-type errors become failed checks; anything else aborts.
    fn run<T>(
        &mut self,
        name: &str,
        r: arcspace::Result<T>,
        judge: impl FnOnce(&T) -> (bool, String),
    ) -> Result<Option<T>, CliError> {
        match r {
            Ok(v) => {
                let (pass, detail) = judge(&v);
                self.record(name, pass, detail);
                Ok(Some(v))
            }
            Err(e @ (Error::AssertionFailure { .. } | Error::InternalInconsistency(_))) => {
                self.record(name, false, e.to_string());
                Ok(None)
            }
            Err(e) => Err(e.into()),
        }
    }
}

/// Contact order, jet-window ecodim, model construction and every model
/// check on one document.
pub fn verify_dgk_cmd(job: &Job, s: &Settings) -> Result<VerifyReport, CliError> {
    let mut checks = Checks(Vec::new());
    let x = &job.scheme;
    let d = x.require_dim()?;
    let ord = ord_along_arc(&jacobian_ideal(x, d)?, &job.arc, s.cap())?;
    let e = match ord {
        OrdResult::Exact(e) => {
            checks.record("contact_order", true, format!("ord of the Jacobian ideal = {e}"));
            e
        }
        other => {
            checks.record("contact_order", false, format!("ord of the Jacobian ideal = {other}"));
            return Ok(finish(s.seed, checks));
        }
    };
    let (a, b) = s.window.unwrap_or(default_window(e));
    let window = checks.run("ecodim_window", ecodim_window(x, &job.arc, a, b), |w| {
        let ok = w.stabilized() && w.value() <= e;
        (ok, format!("levels {a}..{b}: ecodims {:?}, bounded by {e}", w.ecodims()))
    })?;
    let run = construct_drinfeld(x, &job.arc, s.seed, s.genericity)?;
    let model = &run.model;
    checks.record(
        "drinfeld_model",
        model.equations().iter().all(|f| f.evaluate(model.z()) == q(0)),
        format!("m = {} variables, {} equations, z on the model", model.m(), model.equations().len()),
    );
    checks.run("drinfeld_edim", verify_drinfeld_edim(model), |v| (true, format!("edim = {v} = 2de")))?;
    let (lo, hi) = dim_bounds(model);
    let dims = checks.run("drinfeld_dims", verify_drinfeld_dims_with(model, s.dims), |a| {
        (true, format!("dim = {} in [{lo}, {hi}], ecodim = {}", a.tangent_cone_dim, a.ecodim))
    })?;
    if let (Some(w), Some(a)) = (&window, &dims) {
        checks.record(
            "ecodim_concordance",
            w.value() == a.ecodim,
            format!("model ecodim {} against jet window value {}", a.ecodim, w.value()),
        );
    }
    checks.run("tangent_map", drinfeld_tangent_check(model, &job.arc), |t| {
        (true, format!("rank {} = edim {}", t.rank, t.edim))
    })?;
    if !model.is_smooth_marker() {
        let mut levels = vec![e, 2 * e - 1, 2 * e + 1];
        levels.sort_unstable();
        levels.dedup();
        for n in levels {
            let name = format!("jet_cotangent_level_{n}");
            checks.run(&name, jet_cotangent_map(x, model.projection(), &job.arc, n), |m| {
                (true, format!("rank {} = d(n+1)", m.rank))
            })?;
        }
    }
    Ok(finish(s.seed, checks))
}

fn finish(seed: u64, checks: Checks) -> VerifyReport {
    let pass = checks.0.iter().all(|c| c.pass);
    VerifyReport { seed, checks: checks.0, pass }
}
