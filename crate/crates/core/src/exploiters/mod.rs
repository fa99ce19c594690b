//! Universal exploiters: pure functions that take classes as read-only
//! parameters and build a new class from them.
//!
//! Every exploiter runs under one of two [`Strategy`]s. `Naive` walks the
//! full tuple space of members and is the reference; `Keyed` buckets members
//! by an equivalence key. Both produce equivalent classes, and the
//! [`ExploiterStats`] of a call record how much searching it took.

mod scan;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::keys::{MethodKey, PropertyKey, TypeKey};
use crate::model::{
    eq_method, eq_property, eq_type, is_identifier, validate, warnings, AnyClass,
    HeterogeneousClass, HomogeneousClass, Method, Projection, Property, Violation,
};
use scan::{Marks, Tally};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    Naive,
    #[default]
    Keyed,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Naive => "naive",
            Strategy::Keyed => "keyed",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Strategy::Naive),
            "keyed" => Ok(Strategy::Keyed),
            other => Err(format!("unknown strategy `{other}` (expected naive or keyed)")),
        }
    }
}

/// Work counters of one exploiter call.
///
/// For the naive strategy, `tuples_considered` of a union or intersection is
/// `D(t_1)×…×D(t_n) + func(t_1)×…×func(t_n)` over the flattened input types.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExploiterStats {
    pub property_comparisons: u64,
    pub method_comparisons: u64,
    pub tuples_considered: u64,
}

impl ExploiterStats {
    fn add(&mut self, props: Tally, methods: Tally) {
        self.property_comparisons += props.comparisons;
        self.method_comparisons += methods.comparisons;
        self.tuples_considered += props.tuples + methods.tuples;
    }
}

/// Which operation produced a class, from which inputs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lineage {
    pub op: String,
    pub inputs: Vec<String>,
    /// Warnings and structural remarks (single-type collapse, empty core).
    pub notes: Vec<String>,
}

impl Lineage {
    pub fn new(op: impl Into<String>, inputs: Vec<String>) -> Self {
        Lineage {
            op: op.into(),
            inputs,
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExploiterOutcome {
    pub result: AnyClass,
    pub stats: ExploiterStats,
    pub lineage: Lineage,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ExploitError {
    #[error("{op} needs at least {needed} input classes, got {got}")]
    TooFewInputs {
        op: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("{op} does not exist: {reason}")]
    DoesNotExist {
        op: &'static str,
        reason: String,
        /// Methods common to every type when an intersection fails for lack
        /// of a common property.
        common_methods: Vec<Method>,
    },
    #[error("types `{first}` and `{second}` are equivalent")]
    DuplicateTypes { first: String, second: String },
    #[error("`{0}` is not a valid class name")]
    InvalidName(String),
    #[error("input class `{class}` is invalid: {}", join(.violations))]
    InvalidInput {
        class: String,
        violations: Vec<Violation>,
    },
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl ExploitError {
    pub fn is_does_not_exist(&self) -> bool {
        matches!(self, ExploitError::DoesNotExist { .. })
    }
}

/// Per-call state: the strategy in use and the counters it accumulates.
struct Run {
    strategy: Strategy,
    stats: ExploiterStats,
}

impl Run {
    fn new(strategy: Strategy) -> Self {
        Run {
            strategy,
            stats: ExploiterStats::default(),
        }
    }

    /// Marks the members that have an equivalent in every type.
    fn common(&mut self, types: &[HomogeneousClass]) -> (Marks, Marks) {
        let specs: Vec<&[Property]> = types.iter().map(|t| &t.spec[..]).collect();
        let sigs: Vec<&[Method]> = types.iter().map(|t| &t.sig[..]).collect();
        let (pm, pt, mm, mt) = match self.strategy {
            Strategy::Naive => {
                let (pm, pt) = scan::naive_common(&specs, eq_property);
                let (mm, mt) = scan::naive_common(&sigs, eq_method);
                (pm, pt, mm, mt)
            }
            Strategy::Keyed => {
                let (pm, pt) = scan::keyed_common(&specs, PropertyKey::from);
                let (mm, mt) = scan::keyed_common(&sigs, MethodKey::from);
                (pm, pt, mm, mt)
            }
        };
        self.stats.add(pt, mt);
        (pm, mm)
    }

    /// `t` without the members that are equivalent to anything in `pool`.
    fn strip(&mut self, t: &HomogeneousClass, pool: &[HomogeneousClass]) -> HomogeneousClass {
        let pool_props: Vec<&Property> = pool.iter().flat_map(|u| u.spec.iter()).collect();
        let pool_methods: Vec<&Method> = pool.iter().flat_map(|u| u.sig.iter()).collect();
        let (ph, pt, mh, mt) = match self.strategy {
            Strategy::Naive => {
                let (ph, pt) = scan::naive_hits(&t.spec, &pool_props, eq_property);
                let (mh, mt) = scan::naive_hits(&t.sig, &pool_methods, eq_method);
                (ph, pt, mh, mt)
            }
            Strategy::Keyed => {
                let (ph, pt) = scan::keyed_hits(&t.spec, &pool_props, PropertyKey::from);
                let (mh, mt) = scan::keyed_hits(&t.sig, &pool_methods, MethodKey::from);
                (ph, pt, mh, mt)
            }
        };
        self.stats.add(pt, mt);
        HomogeneousClass {
            name: t.name.clone(),
            spec: keep(&t.spec, &ph, false).into(),
            sig: keep(&t.sig, &mh, false).into(),
        }
    }

    /// Positions of the types that survive merging equivalent types; the
    /// first occurrence wins.
    fn survivors(&self, types: &[HomogeneousClass]) -> Vec<usize> {
        match self.strategy {
            Strategy::Naive => {
                let mut kept: Vec<usize> = Vec::with_capacity(types.len());
                for (i, t) in types.iter().enumerate() {
                    if !kept.iter().any(|&k| eq_type(&types[k], t)) {
                        kept.push(i);
                    }
                }
                kept
            }
            Strategy::Keyed => {
                let mut seen = HashSet::new();
                (0..types.len())
                    .filter(|&i| seen.insert(TypeKey::from(&types[i])))
                    .collect()
            }
        }
    }

    fn dedup(&self, types: Vec<HomogeneousClass>) -> Vec<HomogeneousClass> {
        let kept = self.survivors(&types);
        let mut slots: Vec<Option<HomogeneousClass>> = types.into_iter().map(Some).collect();
        kept.into_iter().filter_map(|i| slots[i].take()).collect()
    }
}

fn keep<T: Clone>(items: &[T], marks: &[bool], wanted: bool) -> Vec<T> {
    items
        .iter()
        .zip(marks)
        .filter(|(_, &m)| m == wanted)
        .map(|(x, _)| x.clone())
        .collect()
}

fn check_inputs<'a>(inputs: impl IntoIterator<Item = &'a AnyClass>) -> Result<(), ExploitError> {
    for c in inputs {
        let violations = validate(c);
        if !violations.is_empty() {
            return Err(ExploitError::InvalidInput {
                class: c.name().to_owned(),
                violations,
            });
        }
    }
    Ok(())
}

fn check_name(name: &str) -> Result<(), ExploitError> {
    if is_identifier(name) {
        Ok(())
    } else {
        Err(ExploitError::InvalidName(name.to_owned()))
    }
}

fn all_types(inputs: &[AnyClass]) -> Vec<HomogeneousClass> {
    inputs.iter().flat_map(AnyClass::types).collect()
}

/// Gives every name a unique spelling by appending `_2`, `_3`, … to repeats.
fn unique_names(names: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut used = HashSet::new();
    names
        .into_iter()
        .map(|name| {
            let mut candidate = name.clone();
            let mut n = 2;
            while used.contains(&candidate) {
                candidate = format!("{name}_{n}");
                n += 1;
            }
            used.insert(candidate.clone());
            candidate
        })
        .collect()
}

/// Builds the result class from pairwise non-equivalent `types` whose common
/// members are already marked. `index[i]` maps `types[i]` into `marks`.
fn build(
    types: &[HomogeneousClass],
    index: &[usize],
    marks: (&Marks, &Marks),
    name: &str,
    lineage: &mut Lineage,
) -> AnyClass {
    let result = if types.len() == 1 {
        lineage
            .notes
            .push(format!("single type `{}` collapsed to a homogeneous class", types[0].name));
        AnyClass::Homogeneous(types[0].renamed(name))
    } else {
        let (pm, mm) = marks;
        let first = index[0];
        let core_spec = keep(&types[0].spec, &pm[first], true);
        let core_sig = keep(&types[0].sig, &mm[first], true);
        let names = unique_names(types.iter().map(|t| t.name.clone()));
        let projections = types
            .iter()
            .zip(index)
            .zip(names)
            .map(|((t, &k), type_name)| Projection {
                type_name,
                spec: keep(&t.spec, &pm[k], false).into(),
                sig: keep(&t.sig, &mm[k], false).into(),
            })
            .collect();
        AnyClass::Heterogeneous(HeterogeneousClass::new(name, core_spec, core_sig, projections))
    };
    lineage.notes.extend(warnings(&result));
    debug_assert!(validate(&result).is_empty(), "{:?}", validate(&result));
    result
}

/// Assembles pairwise non-equivalent types into one class under `run`.
fn assemble_with(run: &mut Run, types: &[HomogeneousClass], name: &str, lineage: &mut Lineage) -> AnyClass {
    let (pm, mm) = run.common(types);
    let index: Vec<usize> = (0..types.len()).collect();
    build(types, &index, (&pm, &mm), name, lineage)
}

/// Union of two or more classes.
///
/// The result defines every input type exactly once (equivalent types are
/// merged, first occurrence wins). Members common to all types form the
/// core. A single surviving type yields a homogeneous class.
pub fn union(inputs: &[AnyClass], strategy: Strategy, result_name: &str) -> Result<ExploiterOutcome, ExploitError> {
    const OP: &str = "union";
    if inputs.len() < 2 {
        return Err(ExploitError::TooFewInputs {
            op: OP,
            needed: 2,
            got: inputs.len(),
        });
    }
    check_name(result_name)?;
    check_inputs(inputs)?;

    let mut run = Run::new(strategy);
    let all = all_types(inputs);
    let (pm, mm) = run.common(&all);

    let index = run.survivors(&all);
    let types: Vec<HomogeneousClass> = index.iter().map(|&i| all[i].clone()).collect();

    let mut lineage = Lineage::new(OP, inputs.iter().map(|c| c.name().to_owned()).collect());
    let result = build(&types, &index, (&pm, &mm), result_name, &mut lineage);
    Ok(ExploiterOutcome {
        result,
        stats: run.stats,
        lineage,
    })
}

/// Homogeneous intersection: the largest type contained in every input type.
///
/// Exists only when at least one property is common to all types; a
/// method-only overlap is reported through
/// [`ExploitError::DoesNotExist::common_methods`].
pub fn intersection(
    inputs: &[AnyClass],
    strategy: Strategy,
    result_name: &str,
) -> Result<ExploiterOutcome, ExploitError> {
    const OP: &str = "intersection";
    if inputs.len() < 2 {
        return Err(ExploitError::TooFewInputs {
            op: OP,
            needed: 2,
            got: inputs.len(),
        });
    }
    check_name(result_name)?;
    check_inputs(inputs)?;

    let mut run = Run::new(strategy);
    let all = all_types(inputs);
    let (pm, mm) = run.common(&all);
    let spec = keep(&all[0].spec, &pm[0], true);
    let sig = keep(&all[0].sig, &mm[0], true);
    if spec.is_empty() {
        return Err(ExploitError::DoesNotExist {
            op: OP,
            reason: if sig.is_empty() {
                "the classes share no property or method".into()
            } else {
                format!("the classes share {} method(s) but no property", sig.len())
            },
            common_methods: sig,
        });
    }
    let result = AnyClass::Homogeneous(HomogeneousClass::new(result_name, spec, sig));
    debug_assert!(validate(&result).is_empty());
    Ok(ExploiterOutcome {
        result,
        stats: run.stats,
        lineage: Lineage::new(OP, inputs.iter().map(|c| c.name().to_owned()).collect()),
    })
}

/// Types of `minuend` stripped of every member equivalent to a member of a
/// subtrahend type; empty leftovers dropped, equivalent ones merged.
fn difference_types(run: &mut Run, minuend: &AnyClass, subtrahends: &[AnyClass]) -> Vec<HomogeneousClass> {
    let pool = all_types(subtrahends);
    let stripped: Vec<HomogeneousClass> = minuend
        .types()
        .iter()
        .map(|u| run.strip(u, &pool))
        .filter(|u| !u.is_empty())
        .collect();
    run.dedup(stripped)
}

/// Difference between a class and one or more subtrahend classes.
pub fn difference(
    minuend: &AnyClass,
    subtrahends: &[AnyClass],
    strategy: Strategy,
    result_name: &str,
) -> Result<ExploiterOutcome, ExploitError> {
    const OP: &str = "difference";
    if subtrahends.is_empty() {
        return Err(ExploitError::TooFewInputs {
            op: OP,
            needed: 2,
            got: 1,
        });
    }
    check_name(result_name)?;
    check_inputs(std::iter::once(minuend).chain(subtrahends))?;

    let mut run = Run::new(strategy);
    let survivors = difference_types(&mut run, minuend, subtrahends);
    if survivors.is_empty() {
        return Err(ExploitError::DoesNotExist {
            op: OP,
            reason: format!("every member of `{}` is matched by a subtrahend", minuend.name()),
            common_methods: Vec::new(),
        });
    }
    let mut lineage = Lineage::new(
        OP,
        std::iter::once(minuend)
            .chain(subtrahends)
            .map(|c| c.name().to_owned())
            .collect(),
    );
    let result = assemble_with(&mut run, &survivors, result_name, &mut lineage);
    Ok(ExploiterOutcome {
        result,
        stats: run.stats,
        lineage,
    })
}

/// Symmetric difference: the types of `a ∖ b` followed by those of `b ∖ a`.
pub fn symmetric_difference(
    a: &AnyClass,
    b: &AnyClass,
    strategy: Strategy,
    result_name: &str,
) -> Result<ExploiterOutcome, ExploitError> {
    const OP: &str = "symmetric_difference";
    check_name(result_name)?;
    check_inputs([a, b])?;

    let mut run = Run::new(strategy);
    let mut types = difference_types(&mut run, a, std::slice::from_ref(b));
    types.extend(difference_types(&mut run, b, std::slice::from_ref(a)));
    let types = run.dedup(types);
    if types.is_empty() {
        return Err(ExploitError::DoesNotExist {
            op: OP,
            reason: format!("`{}` and `{}` have no unique members", a.name(), b.name()),
            common_methods: Vec::new(),
        });
    }
    let mut lineage = Lineage::new(OP, vec![a.name().to_owned(), b.name().to_owned()]);
    let result = assemble_with(&mut run, &types, result_name, &mut lineage);
    Ok(ExploiterOutcome {
        result,
        stats: run.stats,
        lineage,
    })
}

/// Deep copy of `c` under a new name.
pub fn clone_class(c: &AnyClass, new_name: &str) -> Result<AnyClass, ExploitError> {
    check_name(new_name)?;
    Ok(c.renamed(new_name))
}

/// Combines pairwise non-equivalent types into one class: a homogeneous class
/// for a single type, otherwise a heterogeneous class whose core holds the
/// members shared by all types.
pub fn assemble_heterogeneous(types: &[HomogeneousClass], result_name: &str) -> Result<AnyClass, ExploitError> {
    const OP: &str = "assemble";
    if types.is_empty() {
        return Err(ExploitError::TooFewInputs {
            op: OP,
            needed: 1,
            got: 0,
        });
    }
    check_name(result_name)?;
    for (i, a) in types.iter().enumerate() {
        if let Some(b) = types[i + 1..].iter().find(|b| eq_type(a, b)) {
            return Err(ExploitError::DuplicateTypes {
                first: a.name.clone(),
                second: b.name.clone(),
            });
        }
    }
    check_inputs(&types.iter().cloned().map(AnyClass::from).collect::<Vec<_>>())?;
    let mut run = Run::new(Strategy::Keyed);
    let mut lineage = Lineage::new(OP, types.iter().map(|t| t.name.clone()).collect());
    Ok(assemble_with(&mut run, types, result_name, &mut lineage))
}
