//! Descriptors: a class file plus the lineage of the class and the time it
//! was emitted. A descriptor is a strict superset of a class file, so
//! [`crate::format::load`] reads one as the plain class.

use std::fs;
use std::path::Path;

use chrono::{SecondsFormat, Utc};
use oodn_core::{canonicalize, validate, AnyClass, Lineage};
use serde::Serialize;

use crate::error::KbError;
use crate::format::{class_from_json, class_out, parse_json, pretty, write_atomic, ClassOut};

#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor {
    pub class: AnyClass,
    pub op: String,
    pub inputs: Vec<String>,
    pub emitted_at: String,
}

#[derive(Serialize)]
struct LineageOut<'a> {
    op: &'a str,
    inputs: &'a [String],
}

#[derive(Serialize)]
struct DescriptorOut<'a> {
    #[serde(flatten)]
    class: ClassOut<'a>,
    lineage: LineageOut<'a>,
    emitted_at: &'a str,
}

pub fn now_rfc3339() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true)
}

/// Descriptor text for `c`; the payload is canonicalized.
pub fn to_string(c: &AnyClass, lineage: &Lineage, emitted_at: &str) -> String {
    let canon = canonicalize(c);
    pretty(&DescriptorOut {
        class: class_out(&canon),
        lineage: LineageOut {
            op: &lineage.op,
            inputs: &lineage.inputs,
        },
        emitted_at,
    })
}

pub fn emit_descriptor(c: &AnyClass, lineage: &Lineage, path: impl AsRef<Path>) -> Result<(), KbError> {
    let violations = validate(c);
    if !violations.is_empty() {
        return Err(KbError::Validation {
            class: c.name().to_owned(),
            violations,
        });
    }
    write_atomic(path.as_ref(), to_string(c, lineage, &now_rfc3339()).as_bytes())
}

pub fn from_str(text: &str) -> Result<Descriptor, KbError> {
    let json = parse_json(text)?;
    let class = class_from_json(&json)?;
    let violations = validate(&class);
    if !violations.is_empty() {
        return Err(KbError::Validation {
            class: class.name().to_owned(),
            violations,
        });
    }
    let schema = |field: &str, message: &str| KbError::Schema {
        file: None,
        field: field.into(),
        message: message.into(),
    };
    let lineage = json.get("lineage").ok_or_else(|| schema("lineage", "missing field"))?;
    let op = lineage
        .get("op")
        .and_then(|v| v.as_str())
        .ok_or_else(|| schema("lineage.op", "expected a string"))?;
    let inputs = lineage
        .get("inputs")
        .and_then(|v| v.as_array())
        .ok_or_else(|| schema("lineage.inputs", "expected an array"))?
        .iter()
        .map(|v| v.as_str().map(str::to_owned))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| schema("lineage.inputs", "expected an array of strings"))?;
    let emitted_at = json
        .get("emitted_at")
        .and_then(|v| v.as_str())
        .ok_or_else(|| schema("emitted_at", "expected a string"))?;
    chrono::DateTime::parse_from_rfc3339(emitted_at)
        .map_err(|e| schema("emitted_at", &format!("not an RFC 3339 timestamp: {e}")))?;
    Ok(Descriptor {
        class,
        op: op.to_owned(),
        inputs,
        emitted_at: emitted_at.to_owned(),
    })
}

pub fn load_descriptor(path: impl AsRef<Path>) -> Result<Descriptor, KbError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| KbError::io(path, e))?;
    from_str(&text).map_err(|e| e.in_file(path))
}

/// True when the file text carries descriptor fields.
pub(crate) fn looks_like_descriptor(text: &str) -> bool {
    parse_json(text)
        .map(|j| j.get("lineage").is_some())
        .unwrap_or(false)
}
