//! The class model: homogeneous classes, single-core heterogeneous classes,
//! and the members (properties and methods) they are built from.
//!
//! Every type here is a plain immutable value. Construction never checks
//! invariants; use [`validate`] for that, so malformed input read from disk
//! can be represented and reported instead of rejected opaquely.

mod equivalence;
mod validate;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

pub use equivalence::{eq_method, eq_property, eq_type, subtype_of};
pub use validate::{canonicalize, is_identifier, validate, warnings, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("projection index {index} out of range (class has {count} projections)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("unknown datatype `{0}`")]
    UnknownDataType(String),
}

/// Scalar value domain of a property or parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DataType {
    Integer,
    Real,
    Text,
    Boolean,
}

impl DataType {
    pub const ALL: [DataType; 4] = [
        DataType::Integer,
        DataType::Real,
        DataType::Text,
        DataType::Boolean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DataType::Integer => "integer",
            DataType::Real => "real",
            DataType::Text => "text",
            DataType::Boolean => "boolean",
        }
    }
}

// Ordered by tag string so canonical ordering is plain lexicographic.
impl Ord for DataType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_str().cmp(other.as_str())
    }
}

impl PartialOrd for DataType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DataType {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DataType::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| ModelError::UnknownDataType(s.to_owned()))
    }
}

/// A literal tagged with its datatype. The tag is carried by the variant, so a
/// value can never disagree with its own datatype.
#[derive(Debug, Clone)]
pub enum Value {
    Integer(i64),
    Real(f64),
    Text(String),
    Boolean(bool),
}

impl Value {
    pub fn datatype(&self) -> DataType {
        match self {
            Value::Integer(_) => DataType::Integer,
            Value::Real(_) => DataType::Real,
            Value::Text(_) => DataType::Text,
            Value::Boolean(_) => DataType::Boolean,
        }
    }
}

/// Literal equality. Reals compare by bit pattern so that equality stays an
/// equivalence relation.
impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Integer(a), Value::Integer(b)) => a == b,
            (Value::Real(a), Value::Real(b)) => a.to_bits() == b.to_bits(),
            (Value::Text(a), Value::Text(b)) => a == b,
            (Value::Boolean(a), Value::Boolean(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Value {}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Integer(a), Value::Integer(b)) => a.cmp(b),
            (Value::Real(a), Value::Real(b)) => a.total_cmp(b),
            (Value::Text(a), Value::Text(b)) => a.cmp(b),
            (Value::Boolean(a), Value::Boolean(b)) => a.cmp(b),
            _ => self.datatype().cmp(&other.datatype()),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Integer(v) => write!(f, "{v}"),
            Value::Real(v) => write!(f, "{v:?}"),
            Value::Text(v) => write!(f, "{v:?}"),
            Value::Boolean(v) => write!(f, "{v}"),
        }
    }
}

/// A named, typed, optionally valued attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Property {
    pub name: String,
    pub datatype: DataType,
    pub value: Option<Value>,
}

impl Property {
    pub fn new(name: impl Into<String>, datatype: DataType) -> Self {
        Property {
            name: name.into(),
            datatype,
            value: None,
        }
    }

    /// A property whose datatype is taken from `value`.
    pub fn valued(name: impl Into<String>, value: Value) -> Self {
        Property {
            name: name.into(),
            datatype: value.datatype(),
            value: Some(value),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.datatype)?;
        if let Some(v) = &self.value {
            write!(f, " = {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub datatype: DataType,
}

impl Param {
    pub fn new(name: impl Into<String>, datatype: DataType) -> Self {
        Param {
            name: name.into(),
            datatype,
        }
    }
}

/// A method signature. `body_ref` is an opaque token and never inspected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Method {
    pub name: String,
    pub params: Vec<Param>,
    pub returns: Option<DataType>,
    pub body_ref: Option<String>,
}

impl Method {
    pub fn new(name: impl Into<String>) -> Self {
        Method {
            name: name.into(),
            params: Vec::new(),
            returns: None,
            body_ref: None,
        }
    }

    pub fn param(mut self, name: impl Into<String>, datatype: DataType) -> Self {
        self.params.push(Param::new(name, datatype));
        self
    }

    pub fn returns(mut self, datatype: DataType) -> Self {
        self.returns = Some(datatype);
        self
    }

    pub fn body_ref(mut self, token: impl Into<String>) -> Self {
        self.body_ref = Some(token.into());
        self
    }

    pub fn param_types(&self) -> impl Iterator<Item = DataType> + '_ {
        self.params.iter().map(|p| p.datatype)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name)?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", p.name, p.datatype)?;
        }
        f.write_str(")")?;
        if let Some(r) = self.returns {
            write!(f, " -> {r}")?;
        }
        Ok(())
    }
}

/// Ordered vector of properties.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Specification(pub Vec<Property>);

/// Ordered vector of methods.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature(pub Vec<Method>);

macro_rules! vec_newtype {
    ($outer:ident, $item:ty) => {
        impl $outer {
            pub fn new(items: Vec<$item>) -> Self {
                $outer(items)
            }
        }

        impl Deref for $outer {
            type Target = [$item];

            fn deref(&self) -> &[$item] {
                &self.0
            }
        }

        impl FromIterator<$item> for $outer {
            fn from_iter<I: IntoIterator<Item = $item>>(iter: I) -> Self {
                $outer(iter.into_iter().collect())
            }
        }

        impl From<Vec<$item>> for $outer {
            fn from(items: Vec<$item>) -> Self {
                $outer(items)
            }
        }

        impl<'a> IntoIterator for &'a $outer {
            type Item = &'a $item;
            type IntoIter = std::slice::Iter<'a, $item>;

            fn into_iter(self) -> Self::IntoIter {
                self.0.iter()
            }
        }
    };
}

vec_newtype!(Specification, Property);
vec_newtype!(Signature, Method);

/// Number of properties (dimension) and methods (functionality) of a type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Metrics {
    pub dimension: usize,
    pub functionality: usize,
}

/// A class whose objects all share one structure: `(P(T), F(T))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousClass {
    pub name: String,
    pub spec: Specification,
    pub sig: Signature,
}

impl HomogeneousClass {
    pub fn new(name: impl Into<String>, spec: Vec<Property>, sig: Vec<Method>) -> Self {
        HomogeneousClass {
            name: name.into(),
            spec: Specification(spec),
            sig: Signature(sig),
        }
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            dimension: self.spec.len(),
            functionality: self.sig.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.spec.is_empty() && self.sig.is_empty()
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        HomogeneousClass {
            name: name.into(),
            ..self.clone()
        }
    }
}

/// Members unique to one type of a heterogeneous class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub type_name: String,
    pub spec: Specification,
    pub sig: Signature,
}

impl Projection {
    pub fn new(type_name: impl Into<String>, spec: Vec<Property>, sig: Vec<Method>) -> Self {
        Projection {
            type_name: type_name.into(),
            spec: Specification(spec),
            sig: Signature(sig),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.spec.is_empty() && self.sig.is_empty()
    }
}

/// A class defining several types through one shared core and one
/// projection per type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeterogeneousClass {
    pub name: String,
    pub core_spec: Specification,
    pub core_sig: Signature,
    pub projections: Vec<Projection>,
}

impl HeterogeneousClass {
    pub fn new(
        name: impl Into<String>,
        core_spec: Vec<Property>,
        core_sig: Vec<Method>,
        projections: Vec<Projection>,
    ) -> Self {
        HeterogeneousClass {
            name: name.into(),
            core_spec: Specification(core_spec),
            core_sig: Signature(core_sig),
            projections,
        }
    }

    pub fn core_is_empty(&self) -> bool {
        self.core_spec.is_empty() && self.core_sig.is_empty()
    }

    /// Type number `index` (1-based): the core followed by that projection.
    pub fn flatten(&self, index: usize) -> Result<HomogeneousClass, ModelError> {
        let count = self.projections.len();
        if index == 0 || index > count {
            return Err(ModelError::IndexOutOfRange { index, count });
        }
        Ok(self.flatten_projection(&self.projections[index - 1]))
    }

    pub(crate) fn flatten_projection(&self, pr: &Projection) -> HomogeneousClass {
        HomogeneousClass {
            name: pr.type_name.clone(),
            spec: self.core_spec.iter().chain(pr.spec.iter()).cloned().collect(),
            sig: self.core_sig.iter().chain(pr.sig.iter()).cloned().collect(),
        }
    }
}

/// Either kind of class; the input and output of every exploiter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyClass {
    Homogeneous(HomogeneousClass),
    Heterogeneous(HeterogeneousClass),
}

impl AnyClass {
    pub fn name(&self) -> &str {
        match self {
            AnyClass::Homogeneous(c) => &c.name,
            AnyClass::Heterogeneous(c) => &c.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyClass::Homogeneous(_) => "homogeneous",
            AnyClass::Heterogeneous(_) => "heterogeneous",
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        matches!(self, AnyClass::Homogeneous(_))
    }

    /// Every type this class defines, flattened, in projection order.
    pub fn types(&self) -> Vec<HomogeneousClass> {
        match self {
            AnyClass::Homogeneous(c) => vec![c.clone()],
            AnyClass::Heterogeneous(h) => h
                .projections
                .iter()
                .map(|pr| h.flatten_projection(pr))
                .collect(),
        }
    }

    pub fn type_count(&self) -> usize {
        match self {
            AnyClass::Homogeneous(_) => 1,
            AnyClass::Heterogeneous(h) => h.projections.len(),
        }
    }

    pub fn renamed(&self, name: impl Into<String>) -> AnyClass {
        match self {
            AnyClass::Homogeneous(c) => AnyClass::Homogeneous(c.renamed(name)),
            AnyClass::Heterogeneous(h) => AnyClass::Heterogeneous(HeterogeneousClass {
                name: name.into(),
                ..h.clone()
            }),
        }
    }
}

impl From<HomogeneousClass> for AnyClass {
    fn from(c: HomogeneousClass) -> Self {
        AnyClass::Homogeneous(c)
    }
}

impl From<HeterogeneousClass> for AnyClass {
    fn from(c: HeterogeneousClass) -> Self {
        AnyClass::Heterogeneous(c)
    }
}

/// Type extraction for a heterogeneous class; `index` is 1-based.
pub fn flatten_type(t: &HeterogeneousClass, index: usize) -> Result<HomogeneousClass, ModelError> {
    t.flatten(index)
}

pub fn types_of(c: &AnyClass) -> Vec<HomogeneousClass> {
    c.types()
}

pub fn metrics_of(t: &HomogeneousClass) -> Metrics {
    t.metrics()
}
