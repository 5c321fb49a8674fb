//! The JSON envelope shared by all subcommands and its plain-text rendering.

use serde::Serialize;
use serde_json::Value;
use su3orb::Error;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub input: Value,
    /// Equivalence moves applied to the input before analysis.
    pub normalization: Vec<String>,
    pub result: Value,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub schema_version: &'static str,
    pub command: String,
    pub error: ErrorBody,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

/// 1: malformed input, 2: not an orbifold, 3: broken internal invariant.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotOrbifold(_)
        | Error::InfiniteStabilizer(_)
        | Error::InfiniteKernel
        | Error::Degenerate(_) => 2,
        Error::CertificateFailure(_) | Error::ExhaustedBound(_) => 3,
        _ => 1,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::SumMismatch { .. } => "SumMismatch",
        Error::NotOrbifold(_) => "NotOrbifold",
        Error::InfiniteStabilizer(_) => "InfiniteStabilizer",
        Error::InfiniteKernel => "InfiniteKernel",
        Error::NonIntegralScale(_) => "NonIntegralScale",
        Error::ZeroScale => "ZeroScale",
        Error::NotUnimodular(_) => "NotUnimodular",
        Error::Overflow => "Overflow",
        Error::ZeroWeight(_) => "ZeroWeight",
        Error::NotPrimitive(_) => "NotPrimitive",
        Error::InvalidNormalization { .. } => "InvalidNormalization",
        Error::NotCoprime(_) => "NotCoprime",
        Error::Degenerate(_) => "Degenerate",
        Error::ExhaustedBound(_) => "ExhaustedBound",
        Error::CertificateFailure(_) => "CertificateFailure",
        Error::InvalidArgument(_) => "InvalidArgument",
    }
}

/// Indented `key: value` lines, one per JSON leaf, so the text and JSON
/// forms carry the same fields.
pub fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", leaf(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_value(x, indent + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}- {}\n", leaf(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_value(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", leaf(v))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !v.is_array() && !v.is_object()
}

// small flat records such as groups `{d1, d2}` stay on one line
fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(is_scalar),
        Value::Object(m) => m.len() <= 3 && m.values().all(is_scalar),
        _ => true,
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(xs) => format!(
            "({})",
            xs.iter().map(leaf).collect::<Vec<_>>().join(", ")
        ),
        Value::Object(m) => format!(
            "{{{}}}",
            m.iter().map(|(k, x)| format!("{k}: {}", leaf(x))).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}
