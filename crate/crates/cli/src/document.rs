//! Job documents: one scheme, one arc and optional command settings.

use std::path::Path;

use arcspace::jets::{AffineScheme, FormalArc};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDocument {
    pub version: u32,
    pub scheme: SchemeBlock,
    pub arc: ArcBlock,
    #[serde(default)]
    pub options: JobOptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeBlock {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

/// Arc components as polynomials in `t`; no precision means exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcBlock {
    pub entries: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resample_limit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_cap: Option<usize>,
}

/// Unversioned single-object form: scheme fields with the arc inline.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatDocument {
    vars: Vec<String>,
    generators: Vec<String>,
    #[serde(default)]
    dim: Option<usize>,
    arc: Vec<String>,
    #[serde(default)]
    precision: Option<usize>,
}

impl From<FlatDocument> for JobDocument {
    fn from(f: FlatDocument) -> Self {
        JobDocument {
            version: SCHEMA_VERSION,
            scheme: SchemeBlock { vars: f.vars, generators: f.generators, dim: f.dim },
            arc: ArcBlock { entries: f.arc, precision: f.precision },
            options: JobOptions::default(),
        }
    }
}

/// A validated document: parsed scheme and arc over matching coordinates.
#[derive(Debug, Clone)]
pub struct Job {
    pub scheme: AffineScheme,
    pub arc: FormalArc,
    pub options: JobOptions,
}

impl JobDocument {
    /// Accepts the versioned form, or the flat form when `version` is absent.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Document(e.to_string()))?;
        let parsed = if value.get("version").is_some() {
            serde_json::from_value(value)
        } else {
            serde_json::from_value::<FlatDocument>(value).map(JobDocument::from)
        };
        parsed.map_err(|e| CliError::Document(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = if path.as_os_str() == "-" {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(path)
        }
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json(&text)
    }

    /// Parses the blocks; `precision` overrides the arc block's precision.
    pub fn into_job(self, precision: Option<usize>) -> Result<Job, CliError> {
        if self.version != SCHEMA_VERSION {
            return Err(CliError::Document(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                self.version
            )));
        }
        let precision = precision.or(self.arc.precision);
        if precision == Some(0) {
            return Err(CliError::Document("arc precision must be at least 1".into()));
        }
        if self.arc.entries.len() != self.scheme.vars.len() {
            return Err(CliError::Document(format!(
                "arc has {} entries for {} variables",
                self.arc.entries.len(),
                self.scheme.vars.len()
            )));
        }
        if let Some([a, b]) = self.options.window {
            if b < a {
                return Err(CliError::Document(format!("empty window {a}:{b}")));
            }
        }
        let scheme = AffineScheme::parse(&self.scheme.vars, &self.scheme.generators, self.scheme.dim)?;
        let arc = FormalArc::parse(&self.arc.entries, precision)?;
        Ok(Job { scheme, arc, options: self.options })
    }
}
