//! Batch front end: job documents in, deterministic JSON reports out.

pub mod commands;
pub mod document;
pub mod error;

pub use commands::{
    drinfeld_cmd, ecodim_cmd, jet_ideal_cmd, ord_cmd, resolve_seed, verify_dgk_cmd, Check, EcodimReport,
    JetIdealReport, LevelReport, OrdReport, OrdTarget, Overrides, Settings, VerifyReport, WindowReport, DEFAULT_SEED,
    SEED_ENV,
};
pub use document::{ArcBlock, Job, JobDocument, JobOptions, SchemeBlock, SCHEMA_VERSION};
pub use error::{exit, CliError};

/// Pretty JSON with a trailing newline; field order follows the types.
pub fn render<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
