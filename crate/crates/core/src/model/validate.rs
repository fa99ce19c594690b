use std::collections::HashSet;
use std::fmt;

use super::{
    eq_method, eq_property, eq_type, AnyClass, HeterogeneousClass, HomogeneousClass, Method,
    Property, Signature, Specification, Value,
};

/// One broken invariant, located by the class, projection or member that
/// breaks it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

impl Violation {
    fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// All invariant violations of `c`. An empty list means the class is valid.
///
/// Empty cores and empty projections are not violations; see [`warnings`].
pub fn validate(c: &AnyClass) -> Vec<Violation> {
    let mut out = Vec::new();
    match c {
        AnyClass::Homogeneous(h) => validate_homogeneous(h, &mut out),
        AnyClass::Heterogeneous(h) => validate_heterogeneous(h, &mut out),
    }
    out
}

/// Conditions worth reporting that do not make a class invalid.
pub fn warnings(c: &AnyClass) -> Vec<String> {
    let AnyClass::Heterogeneous(h) = c else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if h.core_is_empty() {
        out.push(format!("class `{}` has an empty core", h.name));
    }
    for pr in h.projections.iter().filter(|pr| pr.is_empty()) {
        out.push(format!(
            "projection `{}` of class `{}` is empty; its type equals the core",
            pr.type_name, h.name
        ));
    }
    out
}

fn validate_homogeneous(h: &HomogeneousClass, out: &mut Vec<Violation>) {
    let loc = format!("class `{}`", h.name);
    check_name(&loc, "class name", &h.name, out);
    if h.is_empty() {
        out.push(Violation::new(&loc, "specification and signature are both empty"));
    }
    check_members(&loc, &h.spec, &h.sig, out);
}

fn validate_heterogeneous(h: &HeterogeneousClass, out: &mut Vec<Violation>) {
    let loc = format!("class `{}`", h.name);
    check_name(&loc, "class name", &h.name, out);
    if h.projections.len() < 2 {
        out.push(Violation::new(
            &loc,
            format!("needs at least 2 projections, has {}", h.projections.len()),
        ));
    }
    let core_loc = format!("core of `{}`", h.name);
    check_members(&core_loc, &h.core_spec, &h.core_sig, out);

    let mut seen = HashSet::new();
    for pr in &h.projections {
        let ploc = format!("projection `{}`", pr.type_name);
        check_name(&ploc, "type name", &pr.type_name, out);
        if !seen.insert(pr.type_name.as_str()) {
            out.push(Violation::new(&loc, format!("duplicate type name `{}`", pr.type_name)));
        }
        check_members(&ploc, &pr.spec, &pr.sig, out);

        for p in &pr.spec {
            if h.core_spec.iter().any(|q| eq_property(p, q)) {
                out.push(Violation::new(
                    &ploc,
                    format!("property `{}` repeats a core property", p.name),
                ));
            } else if h.core_spec.iter().any(|q| q.name == p.name) {
                out.push(Violation::new(
                    &ploc,
                    format!("property `{}` shares its name with a core property", p.name),
                ));
            }
        }
        for m in &pr.sig {
            if h.core_sig.iter().any(|g| eq_method(m, g)) {
                out.push(Violation::new(
                    &ploc,
                    format!("method `{m}` repeats a core method"),
                ));
            }
        }
    }

    let types: Vec<_> = h
        .projections
        .iter()
        .map(|pr| h.flatten_projection(pr))
        .collect();
    for (i, a) in types.iter().enumerate() {
        for b in &types[i + 1..] {
            if eq_type(a, b) {
                out.push(Violation::new(
                    &loc,
                    format!("types `{}` and `{}` are equivalent", a.name, b.name),
                ));
            }
        }
    }
}

fn check_name(loc: &str, what: &str, name: &str, out: &mut Vec<Violation>) {
    if !is_identifier(name) {
        out.push(Violation::new(loc, format!("{what} `{name}` is not an identifier")));
    }
}

fn check_members(loc: &str, spec: &Specification, sig: &Signature, out: &mut Vec<Violation>) {
    let mut names = HashSet::new();
    for p in spec {
        check_property(loc, p, out);
        if !names.insert(p.name.as_str()) {
            out.push(Violation::new(loc, format!("duplicate property name `{}`", p.name)));
        }
    }
    for (i, m) in sig.iter().enumerate() {
        check_method(loc, m, out);
        if sig[..i].iter().any(|g| eq_method(m, g)) {
            out.push(Violation::new(loc, format!("duplicate method `{m}`")));
        }
    }
}

fn check_property(loc: &str, p: &Property, out: &mut Vec<Violation>) {
    check_name(loc, "property name", &p.name, out);
    match &p.value {
        Some(v) if v.datatype() != p.datatype => out.push(Violation::new(
            loc,
            format!(
                "property `{}` is declared {} but holds a {} value",
                p.name,
                p.datatype,
                v.datatype()
            ),
        )),
        Some(Value::Real(r)) if !r.is_finite() => out.push(Violation::new(
            loc,
            format!("property `{}` holds a non-finite real", p.name),
        )),
        _ => {}
    }
}

fn check_method(loc: &str, m: &Method, out: &mut Vec<Violation>) {
    check_name(loc, "method name", &m.name, out);
    let mut params = HashSet::new();
    for p in &m.params {
        if !params.insert(p.name.as_str()) {
            out.push(Violation::new(
                loc,
                format!("method `{}` repeats parameter `{}`", m.name, p.name),
            ));
        }
    }
}

/// Deterministic member and projection order: properties by name, methods by
/// name then parameter datatypes, projections by type name.
pub fn canonicalize(c: &AnyClass) -> AnyClass {
    match c {
        AnyClass::Homogeneous(h) => AnyClass::Homogeneous(HomogeneousClass {
            name: h.name.clone(),
            spec: sorted_spec(&h.spec),
            sig: sorted_sig(&h.sig),
        }),
        AnyClass::Heterogeneous(h) => {
            let mut projections: Vec<_> = h
                .projections
                .iter()
                .map(|pr| super::Projection {
                    type_name: pr.type_name.clone(),
                    spec: sorted_spec(&pr.spec),
                    sig: sorted_sig(&pr.sig),
                })
                .collect();
            projections.sort_by(|a, b| a.type_name.cmp(&b.type_name));
            AnyClass::Heterogeneous(HeterogeneousClass {
                name: h.name.clone(),
                core_spec: sorted_spec(&h.core_spec),
                core_sig: sorted_sig(&h.core_sig),
                projections,
            })
        }
    }
}

fn sorted_spec(spec: &Specification) -> Specification {
    let mut v = spec.0.clone();
    v.sort_by(|a, b| {
        a.name
            .cmp(&b.name)
            .then(a.datatype.cmp(&b.datatype))
            .then(a.value.cmp(&b.value))
    });
    Specification(v)
}

fn sorted_sig(sig: &Signature) -> Signature {
    let mut v = sig.0.clone();
    v.sort_by(|a, b| {
        a.name
            .cmp(&b.name)
            .then_with(|| a.param_types().cmp(b.param_types()))
            .then(a.returns.cmp(&b.returns))
            .then_with(|| a.body_ref.cmp(&b.body_ref))
    });
    Signature(v)
}
