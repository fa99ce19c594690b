//! The `oodn-class/1` JSON class file.
//!
//! Files are written canonicalized and pretty-printed, so saving the same
//! class twice always produces identical bytes. Reading is two-phase: the
//! JSON text is parsed first (errors carry line and column), then mapped
//! onto the class model (errors carry the path of the offending field).

use std::fs;
use std::io::Write;
use std::path::Path;

use oodn_core::{
    canonicalize, validate, AnyClass, DataType, HeterogeneousClass, HomogeneousClass, Method,
    Param, Projection, Property, Signature, Specification, Value,
};
use serde::Serialize;
use serde_json::{Map, Number, Value as Json};

use crate::error::KbError;

pub const FORMAT_VERSION: &str = "oodn-class/1";

#[derive(Serialize)]
pub(crate) struct PropertyOut<'a> {
    name: &'a str,
    datatype: &'static str,
    value: Option<Json>,
}

#[derive(Serialize)]
pub(crate) struct ParamOut<'a> {
    name: &'a str,
    datatype: &'static str,
}

#[derive(Serialize)]
pub(crate) struct MethodOut<'a> {
    name: &'a str,
    params: Vec<ParamOut<'a>>,
    returns: Option<&'static str>,
    body_ref: Option<&'a str>,
}

#[derive(Serialize)]
pub(crate) struct MembersOut<'a> {
    specification: Vec<PropertyOut<'a>>,
    signature: Vec<MethodOut<'a>>,
}

#[derive(Serialize)]
pub(crate) struct ProjectionOut<'a> {
    type_name: &'a str,
    specification: Vec<PropertyOut<'a>>,
    signature: Vec<MethodOut<'a>>,
}

#[derive(Serialize)]
#[serde(untagged)]
pub(crate) enum ClassOut<'a> {
    Homogeneous {
        format: &'static str,
        kind: &'static str,
        name: &'a str,
        specification: Vec<PropertyOut<'a>>,
        signature: Vec<MethodOut<'a>>,
    },
    Heterogeneous {
        format: &'static str,
        kind: &'static str,
        name: &'a str,
        core: MembersOut<'a>,
        projections: Vec<ProjectionOut<'a>>,
    },
}

fn literal(v: &Value) -> Json {
    match v {
        Value::Integer(i) => Json::from(*i),
        // Non-finite reals never pass validation.
        Value::Real(r) => Number::from_f64(*r).map_or(Json::Null, Json::Number),
        Value::Text(s) => Json::from(s.as_str()),
        Value::Boolean(b) => Json::from(*b),
    }
}

fn spec_out(spec: &Specification) -> Vec<PropertyOut<'_>> {
    spec.iter()
        .map(|p| PropertyOut {
            name: &p.name,
            datatype: p.datatype.as_str(),
            value: p.value.as_ref().map(literal),
        })
        .collect()
}

fn sig_out(sig: &Signature) -> Vec<MethodOut<'_>> {
    sig.iter()
        .map(|m| MethodOut {
            name: &m.name,
            params: m
                .params
                .iter()
                .map(|p| ParamOut {
                    name: &p.name,
                    datatype: p.datatype.as_str(),
                })
                .collect(),
            returns: m.returns.map(DataType::as_str),
            body_ref: m.body_ref.as_deref(),
        })
        .collect()
}

/// Serializable view of `c` in its current member order.
pub(crate) fn class_out(c: &AnyClass) -> ClassOut<'_> {
    match c {
        AnyClass::Homogeneous(h) => ClassOut::Homogeneous {
            format: FORMAT_VERSION,
            kind: "homogeneous",
            name: &h.name,
            specification: spec_out(&h.spec),
            signature: sig_out(&h.sig),
        },
        AnyClass::Heterogeneous(h) => ClassOut::Heterogeneous {
            format: FORMAT_VERSION,
            kind: "heterogeneous",
            name: &h.name,
            core: MembersOut {
                specification: spec_out(&h.core_spec),
                signature: sig_out(&h.core_sig),
            },
            projections: h
                .projections
                .iter()
                .map(|pr| ProjectionOut {
                    type_name: &pr.type_name,
                    specification: spec_out(&pr.spec),
                    signature: sig_out(&pr.sig),
                })
                .collect(),
        },
    }
}

pub(crate) fn pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("class views always serialize");
    text.push('\n');
    text
}

/// Canonical class-file text for `c`.
pub fn to_string(c: &AnyClass) -> String {
    pretty(&class_out(&canonicalize(c)))
}

/// Parses and validates class-file text. Unknown top-level keys are
/// ignored, so descriptors load as class files.
pub fn from_str(text: &str) -> Result<AnyClass, KbError> {
    let json = parse_json(text)?;
    let class = class_from_json(&json)?;
    let violations = validate(&class);
    if violations.is_empty() {
        Ok(class)
    } else {
        Err(KbError::Validation {
            class: class.name().to_owned(),
            violations,
        })
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<AnyClass, KbError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| KbError::io(path, e))?;
    from_str(&text).map_err(|e| e.in_file(path))
}

/// Writes the canonical form of `c` to `path` through a temporary file in
/// the same directory, so readers never see a partial file.
pub fn save(c: &AnyClass, path: impl AsRef<Path>) -> Result<(), KbError> {
    let violations = validate(c);
    if !violations.is_empty() {
        return Err(KbError::Validation {
            class: c.name().to_owned(),
            violations,
        });
    }
    write_atomic(path.as_ref(), to_string(c).as_bytes())
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), KbError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| KbError::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| KbError::io(path, e))?;
    tmp.persist(path).map_err(|e| KbError::io(path, e.error))?;
    Ok(())
}

pub(crate) fn parse_json(text: &str) -> Result<Json, KbError> {
    serde_json::from_str(text).map_err(|e| KbError::Parse {
        file: None,
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// A JSON object together with its location, for error messages.
struct Obj<'a> {
    path: String,
    map: &'a Map<String, Json>,
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> KbError {
    KbError::Schema {
        file: None,
        field: field.into(),
        message: message.into(),
    }
}

impl<'a> Obj<'a> {
    fn new(path: String, json: &'a Json) -> Result<Self, KbError> {
        match json {
            Json::Object(map) => Ok(Obj { path, map }),
            _ => Err(schema(display_path(&path), "expected an object")),
        }
    }

    fn field(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_owned()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn only(&self, keys: &[&str]) -> Result<(), KbError> {
        match self.map.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(schema(self.field(k), "unexpected field")),
            None => Ok(()),
        }
    }

    fn get(&self, key: &str) -> Result<&'a Json, KbError> {
        self.map.get(key).ok_or_else(|| schema(self.field(key), "missing field"))
    }

    /// `None` for an absent or null field.
    fn nullable(&self, key: &str) -> Option<&'a Json> {
        self.map.get(key).filter(|v| !v.is_null())
    }

    fn str(&self, key: &str) -> Result<&'a str, KbError> {
        self.get(key)?
            .as_str()
            .ok_or_else(|| schema(self.field(key), "expected a string"))
    }

    fn array(&self, key: &str) -> Result<&'a [Json], KbError> {
        self.get(key)?
            .as_array()
            .map(Vec::as_slice)
            .ok_or_else(|| schema(self.field(key), "expected an array"))
    }

    fn datatype(&self, key: &str) -> Result<DataType, KbError> {
        self.str(key)?
            .parse()
            .map_err(|e: oodn_core::ModelError| schema(self.field(key), e.to_string()))
    }
}

fn display_path(path: &str) -> String {
    if path.is_empty() {
        "<root>".into()
    } else {
        path.to_owned()
    }
}

pub(crate) fn class_from_json(json: &Json) -> Result<AnyClass, KbError> {
    let top = Obj::new(String::new(), json)?;
    let format = top.str("format")?;
    if format != FORMAT_VERSION {
        return Err(schema(
            "format",
            format!("unsupported format `{format}`, expected `{FORMAT_VERSION}`"),
        ));
    }
    let name = top.str("name")?.to_owned();
    match top.str("kind")? {
        "homogeneous" => Ok(AnyClass::Homogeneous(HomogeneousClass {
            name,
            spec: spec_in(&top, "specification")?,
            sig: sig_in(&top, "signature")?,
        })),
        "heterogeneous" => {
            let core = Obj::new(top.field("core"), top.get("core")?)?;
            core.only(&["specification", "signature"])?;
            let projections = top
                .array("projections")?
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let pr = Obj::new(format!("projections[{i}]"), p)?;
                    pr.only(&["type_name", "specification", "signature"])?;
                    Ok(Projection {
                        type_name: pr.str("type_name")?.to_owned(),
                        spec: spec_in(&pr, "specification")?,
                        sig: sig_in(&pr, "signature")?,
                    })
                })
                .collect::<Result<Vec<_>, KbError>>()?;
            Ok(AnyClass::Heterogeneous(HeterogeneousClass {
                name,
                core_spec: spec_in(&core, "specification")?,
                core_sig: sig_in(&core, "signature")?,
                projections,
            }))
        }
        other => Err(schema(
            "kind",
            format!("unknown kind `{other}`, expected `homogeneous` or `heterogeneous`"),
        )),
    }
}

fn spec_in(parent: &Obj<'_>, key: &str) -> Result<Specification, KbError> {
    parent
        .array(key)?
        .iter()
        .enumerate()
        .map(|(i, item)| property_in(Obj::new(format!("{}[{i}]", parent.field(key)), item)?))
        .collect()
}

fn sig_in(parent: &Obj<'_>, key: &str) -> Result<Signature, KbError> {
    parent
        .array(key)?
        .iter()
        .enumerate()
        .map(|(i, item)| method_in(Obj::new(format!("{}[{i}]", parent.field(key)), item)?))
        .collect()
}

fn property_in(o: Obj<'_>) -> Result<Property, KbError> {
    o.only(&["name", "datatype", "value"])?;
    let datatype = o.datatype("datatype")?;
    let value = match o.nullable("value") {
        None => None,
        Some(v) => Some(literal_in(v, datatype).ok_or_else(|| {
            schema(o.field("value"), format!("`{v}` is not a valid {datatype} literal"))
        })?),
    };
    Ok(Property {
        name: o.str("name")?.to_owned(),
        datatype,
        value,
    })
}

fn literal_in(v: &Json, datatype: DataType) -> Option<Value> {
    match datatype {
        DataType::Integer => v.as_i64().map(Value::Integer),
        DataType::Real => v.as_f64().map(Value::Real),
        DataType::Text => v.as_str().map(|s| Value::Text(s.to_owned())),
        DataType::Boolean => v.as_bool().map(Value::Boolean),
    }
}

fn method_in(o: Obj<'_>) -> Result<Method, KbError> {
    o.only(&["name", "params", "returns", "body_ref"])?;
    let params = o
        .array("params")?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let p = Obj::new(format!("{}[{i}]", o.field("params")), p)?;
            p.only(&["name", "datatype"])?;
            Ok(Param {
                name: p.str("name")?.to_owned(),
                datatype: p.datatype("datatype")?,
            })
        })
        .collect::<Result<Vec<_>, KbError>>()?;
    let returns = match o.nullable("returns") {
        None => None,
        Some(_) => Some(o.datatype("returns")?),
    };
    let body_ref = match o.nullable("body_ref") {
        None => None,
        Some(_) => Some(o.str("body_ref")?.to_owned()),
    };
    Ok(Method {
        name: o.str("name")?.to_owned(),
        params,
        returns,
        body_ref,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAR: &str = r#"{
  "format": "oodn-class/1",
  "kind": "homogeneous",
  "name": "Car",
  "specification": [
    { "name": "wheels", "datatype": "integer", "value": 4 },
    { "name": "color", "datatype": "text", "value": null }
  ],
  "signature": [
    { "name": "drive", "params": [{ "name": "speed", "datatype": "real" }], "returns": null, "body_ref": "car.drive" }
  ]
}"#;

    fn err_of(text: &str) -> KbError {
        from_str(text).unwrap_err()
    }

    #[test]
    fn parses_homogeneous() {
        let c = from_str(CAR).unwrap();
        let AnyClass::Homogeneous(h) = &c else { panic!() };
        assert_eq!(h.spec[0], Property::valued("wheels", Value::Integer(4)));
        assert_eq!(h.sig[0].params[0].datatype, DataType::Real);
        assert_eq!(h.sig[0].body_ref.as_deref(), Some("car.drive"));
    }

    #[test]
    fn canonical_text_is_sorted_and_stable() {
        let c = from_str(CAR).unwrap();
        let text = to_string(&c);
        assert!(text.find("\"color\"").unwrap() < text.find("\"wheels\"").unwrap());
        assert!(text.ends_with("}\n"));
        assert_eq!(to_string(&from_str(&text).unwrap()), text);
    }

    #[test]
    fn malformed_json_reports_position() {
        match err_of("{\n  \"format\": \"oodn-class/1\",\n  oops\n}") {
            KbError::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn version_gate() {
        let text = CAR.replace("oodn-class/1", "oodn-class/2");
        assert!(matches!(err_of(&text), KbError::Schema { field, .. } if field == "format"));
    }

    #[test]
    fn schema_errors_name_the_field() {
        let text = CAR.replace("\"integer\", \"value\": 4", "\"integer\", \"value\": 4.5");
        match err_of(&text) {
            KbError::Schema { field, .. } => assert_eq!(field, "specification[0].value"),
            e => panic!("{e:?}"),
        }
        let text = CAR.replace("\"datatype\": \"text\"", "\"datatype\": \"string\"");
        match err_of(&text) {
            KbError::Schema { field, .. } => assert_eq!(field, "specification[1].datatype"),
            e => panic!("{e:?}"),
        }
        let text = CAR.replace("\"params\"", "\"parameters\"");
        match err_of(&text) {
            KbError::Schema { field, .. } => assert_eq!(field, "signature[0].parameters"),
            e => panic!("{e:?}"),
        }
        let text = CAR.replace("\"kind\": \"homogeneous\",", "");
        match err_of(&text) {
            KbError::Schema { field, message, .. } => {
                assert_eq!(field, "kind");
                assert_eq!(message, "missing field");
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn invalid_class_is_a_validation_error() {
        let text = CAR.replace("\"color\"", "\"wheels\"");
        assert!(matches!(err_of(&text), KbError::Validation { .. }));
    }

    #[test]
    fn nullable_fields_may_be_omitted() {
        let text = r#"{"format":"oodn-class/1","kind":"homogeneous","name":"A",
            "specification":[{"name":"x","datatype":"real"}],
            "signature":[{"name":"f","params":[]}]}"#;
        let c = from_str(text).unwrap();
        assert_eq!(c.types()[0].spec[0].value, None);
    }

    #[test]
    fn integral_real_literal_round_trips() {
        let text = CAR.replace("\"integer\", \"value\": 4", "\"real\", \"value\": 4");
        let c = from_str(&text).unwrap();
        assert_eq!(c.types()[0].spec[0].value, Some(Value::Real(4.0)));
        assert!(to_string(&c).contains("\"value\": 4.0"));
    }
}
