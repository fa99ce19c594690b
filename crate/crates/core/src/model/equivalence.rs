use super::{HomogeneousClass, Method, Property};

/// Structural equality: name, datatype and value (absent on both sides, or
/// present and literal-equal).
pub fn eq_property(a: &Property, b: &Property) -> bool {
    a.name == b.name && a.datatype == b.datatype && a.value == b.value
}

/// Signature equality. Parameter names and body references are ignored.
pub fn eq_method(a: &Method, b: &Method) -> bool {
    a.name == b.name
        && a.returns == b.returns
        && a.params.len() == b.params.len()
        && a.param_types().eq(b.param_types())
}

/// True when the members of `a` and `b` can be paired one-to-one under the
/// member equivalences. Order and class names are ignored.
pub fn eq_type(a: &HomogeneousClass, b: &HomogeneousClass) -> bool {
    bijective(&a.spec, &b.spec, eq_property) && bijective(&a.sig, &b.sig, eq_method)
}

/// Every member of `a` has an equivalent member in `b`.
pub fn subtype_of(a: &HomogeneousClass, b: &HomogeneousClass) -> bool {
    a.spec.iter().all(|p| b.spec.iter().any(|q| eq_property(p, q)))
        && a.sig.iter().all(|f| b.sig.iter().any(|g| eq_method(f, g)))
}

// Greedy matching is exact here because `eq` is an equivalence relation:
// any unused equivalent partner is as good as any other.
fn bijective<T>(a: &[T], b: &[T], eq: impl Fn(&T, &T) -> bool) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        match (0..b.len()).find(|&j| !used[j] && eq(x, &b[j])) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}
