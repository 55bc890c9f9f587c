use arcspace::Error;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("invalid job document: {0}")]
    Document(String),

    #[error("{0}")]
    Usage(String),
}

/// Exit status contract: 1 input, 2 certificate, 3 assertion, 4 resource.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const CERTIFICATE: i32 = 2;
    pub const ASSERTION: i32 = 3;
    pub const RESOURCE: i32 = 4;
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::CertificateFailure { .. } => exit::CERTIFICATE,
                Error::AssertionFailure { .. } | Error::InternalInconsistency(_) => exit::ASSERTION,
                Error::ResourceLimit(_) => exit::RESOURCE,
                _ => exit::INPUT,
            },
            CliError::Io { .. } | CliError::Document(_) | CliError::Usage(_) => exit::INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e {
                Error::UnknownVariable { .. } => "unknown_variable",
                Error::Syntax { .. } => "syntax",
                Error::NegativeExponent { .. } => "negative_exponent",
                Error::VarsetMismatch => "varset_mismatch",
                Error::NotRegular { .. } => "not_regular",
                Error::NotMonic => "not_monic",
                Error::InvalidCodim { .. } => "invalid_codim",
                Error::InsufficientPrecision { .. } => "insufficient_precision",
                Error::PointNotOnScheme { .. } => "point_not_on_scheme",
                Error::ResourceLimit(_) => "resource_limit",
                Error::InternalInconsistency(_) => "internal_inconsistency",
                Error::CertificateFailure { .. } => "certificate_failure",
                Error::AssertionFailure { .. } => "assertion_failure",
                Error::InvalidInput(_) => "invalid_input",
            },
            CliError::Io { .. } => "io",
            CliError::Document(_) => "document",
            CliError::Usage(_) => "usage",
        }
    }

    /// Machine-readable error body; `seed` is echoed for randomized commands.
    pub fn to_json(&self, seed: Option<u64>) -> Value {
        let mut body = json!({
            "kind": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        let details = match self {
            CliError::Core(Error::UnknownVariable { position, .. })
            | CliError::Core(Error::Syntax { position, .. })
            | CliError::Core(Error::NegativeExponent { position }) => json!({ "position": position }),
            CliError::Core(Error::CertificateFailure { attempts, reason }) => {
                json!({ "attempts": attempts, "reason": reason })
            }
            CliError::Core(Error::AssertionFailure { what, expected, actual }) => {
                json!({ "what": what, "expected": expected, "actual": actual })
            }
            CliError::Core(Error::InsufficientPrecision { needed, have }) => {
                json!({ "needed": needed, "have": have })
            }
            _ => json!({}),
        };
        let obj = body.as_object_mut().expect("object literal");
        if let Value::Object(d) = details {
            obj.extend(d);
        }
        if let Some(s) = seed {
            obj.insert("seed".into(), json!(s));
        }
        json!({ "error": body })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let cert = CliError::from(Error::CertificateFailure { attempts: 3, reason: "r".into() });
        assert_eq!(cert.exit_code(), 2);
        assert_eq!(cert.to_json(Some(9))["error"]["attempts"], 3);
        assert_eq!(cert.to_json(Some(9))["error"]["seed"], 9);
        let assertion = CliError::from(Error::AssertionFailure { what: "w".into(), expected: "1".into(), actual: "2".into() });
        assert_eq!(assertion.exit_code(), 3);
        assert_eq!(CliError::from(Error::InternalInconsistency("x".into())).exit_code(), 3);
        assert_eq!(CliError::from(Error::ResourceLimit("x".into())).exit_code(), 4);
        assert_eq!(CliError::from(Error::NotMonic).exit_code(), 1);
        assert_eq!(CliError::Document("x".into()).exit_code(), 1);
        let syntax = CliError::from(Error::Syntax { position: 4, message: "m".into() });
        assert_eq!(syntax.to_json(None)["error"]["position"], 4);
        assert!(syntax.to_json(None)["error"].get("seed").is_none());
    }
}
