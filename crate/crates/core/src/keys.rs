//! Hashable equivalence keys. Two members are equivalent exactly when their
//! keys are equal, which lets the keyed strategy bucket members instead of
//! comparing every tuple.

use crate::model::{DataType, HomogeneousClass, Method, Property, Value};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiteralKey<'a> {
    Integer(i64),
    Real(u64),
    Text(&'a str),
    Boolean(bool),
}

impl<'a> From<&'a Value> for LiteralKey<'a> {
    fn from(v: &'a Value) -> Self {
        match v {
            Value::Integer(i) => LiteralKey::Integer(*i),
            Value::Real(r) => LiteralKey::Real(r.to_bits()),
            Value::Text(s) => LiteralKey::Text(s),
            Value::Boolean(b) => LiteralKey::Boolean(*b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropertyKey<'a> {
    pub name: &'a str,
    pub datatype: DataType,
    pub value: Option<LiteralKey<'a>>,
}

impl<'a> From<&'a Property> for PropertyKey<'a> {
    fn from(p: &'a Property) -> Self {
        PropertyKey {
            name: &p.name,
            datatype: p.datatype,
            value: p.value.as_ref().map(LiteralKey::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MethodKey<'a> {
    pub name: &'a str,
    pub params: Vec<DataType>,
    pub returns: Option<DataType>,
}

impl<'a> From<&'a Method> for MethodKey<'a> {
    fn from(m: &'a Method) -> Self {
        MethodKey {
            name: &m.name,
            params: m.param_types().collect(),
            returns: m.returns,
        }
    }
}

/// Sorted member keys of a type; equal exactly when the types are
/// equivalent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeKey<'a> {
    properties: Vec<PropertyKey<'a>>,
    methods: Vec<MethodKey<'a>>,
}

impl<'a> From<&'a HomogeneousClass> for TypeKey<'a> {
    fn from(t: &'a HomogeneousClass) -> Self {
        let mut properties: Vec<_> = t.spec.iter().map(PropertyKey::from).collect();
        let mut methods: Vec<_> = t.sig.iter().map(MethodKey::from).collect();
        properties.sort_unstable();
        methods.sort_unstable();
        TypeKey {
            properties,
            methods,
        }
    }
}
