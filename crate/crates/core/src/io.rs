//! File formats: vertex files in, JSON reports out. Every number is an
//! exact rational string.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::antipodality::Verdict;
use crate::constructions::FamilySpec;
use crate::error::{Error, Result};
use crate::norms::NormKind;
use crate::polytope::VertexSet;

/// Input document: `{ambient_dim, vertices, affine_constraints?}` plus
/// optional provenance written by `generate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexFile {
    #[serde(flatten)]
    pub instance: VertexSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recommended_norm: Option<NormKind>,
}

impl VertexFile {
    pub fn new(instance: VertexSet) -> Self {
        VertexFile {
            instance,
            family: None,
            recommended_norm: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    NotApplicable,
    True,
    False,
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Holds => Status::Holds,
            Verdict::Violated => Status::Violated,
            Verdict::NotApplicable => Status::NotApplicable,
        }
    }
}

impl From<bool> for Status {
    fn from(b: bool) -> Self {
        if b {
            Status::True
        } else {
            Status::False
        }
    }
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::NotApplicable => "not_applicable",
            Status::True => "true",
            Status::False => "false",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub witnesses: Value,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub values: Value,
}

impl CheckRecord {
    pub fn new(name: &str, status: impl Into<Status>) -> Self {
        CheckRecord {
            name: name.to_string(),
            status: status.into(),
            witnesses: Value::Null,
            values: Value::Null,
        }
    }

    pub fn witnesses(mut self, w: impl Serialize) -> Self {
        self.witnesses = serde_json::to_value(w).expect("report types serialize");
        self
    }

    pub fn values(mut self, v: impl Serialize) -> Self {
        self.values = serde_json::to_value(v).expect("report types serialize");
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    /// Command line that produced the report.
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormKind>,
    pub instance_digest: String,
    pub instance: VertexSet,
    pub checks: Vec<CheckRecord>,
}

impl ReportFile {
    pub fn new(command: Vec<String>, instance: VertexSet) -> Self {
        ReportFile {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed: None,
            norm: None,
            instance_digest: digest(&instance),
            instance,
            checks: Vec::new(),
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn any_violated(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Violated)
    }
}

/// SHA-256 of the canonical JSON form of the instance, hex encoded.
pub fn digest(vs: &VertexSet) -> String {
    let bytes = serde_json::to_vec(vs).expect("vertex sets serialize");
    hex::encode(Sha256::digest(bytes))
}

/// Reads a vertex file or a report (whose embedded instance is used).
pub fn read_instance(path: &Path) -> Result<VertexFile> {
    let text = fs::read_to_string(path)?;
    parse_instance(&text)
}

pub fn parse_instance(text: &str) -> Result<VertexFile> {
    let value: Value = serde_json::from_str(text)?;
    let doc = match value.get("instance") {
        Some(inner) => inner.clone(),
        None => value,
    };
    serde_json::from_value(doc).map_err(|e| Error::Parse(e.to_string()))
}

/// Writes `value` as pretty JSON via a temporary file and a rename, so a
/// reader never sees a partial document.
pub fn write_json_atomic(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
