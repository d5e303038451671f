//! Versioned JSON documents: every file read or written carries
//! `"schema": "lipcert/1"`.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const SCHEMA: &str = "lipcert/1";

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected a JSON object")]
    NotAnObject,
    #[error("missing \"schema\" field")]
    MissingSchema,
    #[error("unsupported schema `{0}`, expected `{SCHEMA}`")]
    WrongSchema(String),
}

/// Parses a document, checks its schema tag and decodes the remaining fields
/// as `T`.
pub fn from_document<T: DeserializeOwned>(text: &str) -> Result<T, SchemaError> {
    let mut value: Value = serde_json::from_str(text)?;
    let obj = value.as_object_mut().ok_or(SchemaError::NotAnObject)?;
    match obj.remove("schema") {
        None => return Err(SchemaError::MissingSchema),
        Some(Value::String(s)) if s == SCHEMA => {}
        Some(other) => return Err(SchemaError::WrongSchema(other.as_str().map_or_else(|| other.to_string(), str::to_string))),
    }
    Ok(serde_json::from_value(value)?)
}

/// Serializes `body` (which must be a JSON object) with the schema tag first.
pub fn to_document<T: Serialize>(body: &T) -> Result<String, SchemaError> {
    let value = serde_json::to_value(body)?;
    let Value::Object(fields) = value else {
        return Err(SchemaError::NotAnObject);
    };
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), Value::String(SCHEMA.into()));
    out.extend(fields);
    let mut text = serde_json::to_string_pretty(&Value::Object(out))?;
    text.push('\n');
    Ok(text)
}

/// What produced a report: enough to rerun it and compare bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    /// Input path to lowercase hex SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    pub params: BTreeMap<String, Value>,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_path: Option<String>,
}

impl RunManifest {
    pub fn new(command: Vec<String>) -> Self {
        RunManifest {
            command,
            inputs: BTreeMap::new(),
            params: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            report_path: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.into(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }
}

/// A report document: `{"schema", "manifest", "report"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub manifest: RunManifest,
    pub report: T,
}
