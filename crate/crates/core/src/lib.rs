//! Runtime class generation over object-oriented dynamic networks.
//!
//! [`model`] holds the class structures and their equivalence relations;
//! [`exploiters`] builds new classes from existing ones. Everything is a pure
//! function over immutable values.

pub mod batch;
pub mod exploiters;
pub mod keys;
pub mod model;
pub mod sample;

pub use exploiters::{
    assemble_heterogeneous, clone_class, difference, intersection, symmetric_difference, union,
    ExploitError, ExploiterOutcome, ExploiterStats, Lineage, Strategy,
};
pub use model::{
    canonicalize, eq_method, eq_property, eq_type, flatten_type, metrics_of, subtype_of, types_of,
    validate, warnings, AnyClass, DataType, HeterogeneousClass, HomogeneousClass, Method, Metrics,
    ModelError, Param, Projection, Property, Signature, Specification, Value, Violation,
};
