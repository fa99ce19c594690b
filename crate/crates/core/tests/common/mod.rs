#![allow(dead_code)]

use oodn_core::{
    AnyClass, DataType, HeterogeneousClass, HomogeneousClass, Method, Projection, Property, Value,
};

pub fn int(name: &str, v: i64) -> Property {
    Property::valued(name, Value::Integer(v))
}

pub fn text(name: &str) -> Property {
    Property::new(name, DataType::Text)
}

pub fn car() -> HomogeneousClass {
    HomogeneousClass::new(
        "Car",
        vec![int("wheels", 4), text("color"), int("doors", 4)],
        vec![Method::new("drive"), Method::new("stop")],
    )
}

pub fn motorcycle() -> HomogeneousClass {
    HomogeneousClass::new(
        "Motorcycle",
        vec![int("wheels", 2), text("color")],
        vec![Method::new("drive")],
    )
}

pub fn boat() -> HomogeneousClass {
    HomogeneousClass::new(
        "Boat",
        vec![Property::new("displacement", DataType::Real), text("color")],
        vec![Method::new("sail")],
    )
}

pub fn no_overlap() -> HomogeneousClass {
    HomogeneousClass::new(
        "NoOverlap",
        vec![Property::new("mass", DataType::Real)],
        vec![Method::new("weigh")],
    )
}

pub fn car_plus() -> HomogeneousClass {
    let mut c = car().renamed("CarPlus");
    c.spec.0.push(Property::new("sunroof", DataType::Boolean));
    c
}

pub fn vehicles() -> HeterogeneousClass {
    HeterogeneousClass::new(
        "Vehicles",
        vec![text("color")],
        vec![Method::new("drive")],
        vec![
            Projection::new("Car", vec![int("wheels", 4), int("doors", 4)], vec![Method::new("stop")]),
            Projection::new("Motorcycle", vec![int("wheels", 2)], vec![]),
        ],
    )
}

pub fn any(c: impl Into<AnyClass>) -> AnyClass {
    c.into()
}

/// Brute-force type equivalence: tries every pairing of members.
pub fn eq_type_by_permutation(a: &HomogeneousClass, b: &HomogeneousClass) -> bool {
    fn some_pairing<T>(a: &[T], b: &[T], eq: &dyn Fn(&T, &T) -> bool) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let mut perm: Vec<usize> = (0..b.len()).collect();
        permutations(&mut perm, 0, &mut |p| a.iter().zip(p).all(|(x, &j)| eq(x, &b[j])))
    }
    fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == v.len() {
            return f(v);
        }
        for i in k..v.len() {
            v.swap(k, i);
            if permutations(v, k + 1, f) {
                v.swap(k, i);
                return true;
            }
            v.swap(k, i);
        }
        false
    }
    let prop_eq = |x: &Property, y: &Property| {
        x.name == y.name && x.datatype == y.datatype && x.value == y.value
    };
    let method_eq = |x: &Method, y: &Method| {
        x.name == y.name
            && x.returns == y.returns
            && x.params.iter().map(|p| p.datatype).collect::<Vec<_>>()
                == y.params.iter().map(|p| p.datatype).collect::<Vec<_>>()
    };
    some_pairing(&a.spec, &b.spec, &prop_eq) && some_pairing(&a.sig, &b.sig, &method_eq)
}

/// Flattened types of `a` and `b` match one-to-one under type equivalence.
pub fn same_type_multiset(a: &AnyClass, b: &AnyClass) -> bool {
    let ta = a.types();
    let tb = b.types();
    if ta.len() != tb.len() {
        return false;
    }
    let mut used = vec![false; tb.len()];
    ta.iter().all(|x| {
        match (0..tb.len()).find(|&j| !used[j] && oodn_core::eq_type(x, &tb[j])) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}

/// Same flattened types in the same order.
pub fn same_types_in_order(a: &AnyClass, b: &AnyClass) -> bool {
    let ta = a.types();
    let tb = b.types();
    ta.len() == tb.len() && ta.iter().zip(&tb).all(|(x, y)| oodn_core::eq_type(x, y))
}
