mod common;

use std::fs;

use common::*;
use oodn_core::sample::ClassSampler;
use oodn_core::{canonicalize, AnyClass, Lineage};
use oodn_kb::descriptor;
use oodn_kb::{format, load, load_descriptor, save, KbError, Registry};
use proptest::prelude::*;

#[test]
fn fixtures_are_canonical_on_disk() {
    for f in FIXTURES {
        let text = fs::read_to_string(fixture(f)).unwrap();
        let c = format::from_str(&text).unwrap();
        assert_eq!(format::to_string(&c), text, "{f}");
    }
}

#[test]
fn save_load_is_a_fixpoint() {
    let dir = tempfile::tempdir().unwrap();
    for f in FIXTURES {
        let c = load(fixture(f)).unwrap();
        let path = dir.path().join(f);
        save(&c, &path).unwrap();
        let back = load(&path).unwrap();
        assert_eq!(back, canonicalize(&c));
        let first = fs::read(&path).unwrap();
        save(&back, &path).unwrap();
        assert_eq!(fs::read(&path).unwrap(), first, "{f}");
    }
}

#[test]
fn member_order_does_not_change_bytes() {
    let mut c = load(fixture("vehicles.cls")).unwrap();
    let before = format::to_string(&c);
    if let AnyClass::Heterogeneous(h) = &mut c {
        h.projections.reverse();
        h.projections[1].spec.0.reverse();
    }
    assert_eq!(format::to_string(&c), before);
}

#[test]
fn io_errors_name_the_path() {
    let c = load(fixture("car.cls")).unwrap();
    let err = save(&c, "/nonexistent-dir/x/car.cls").unwrap_err();
    assert!(matches!(err, KbError::Io { .. }), "{err}");
    assert!(err.to_string().contains("/nonexistent-dir/x/car.cls"));
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn schema_and_parse_errors() {
    let err = load(fixture("bad_version.cls")).unwrap_err();
    assert!(matches!(&err, KbError::Schema { field, .. } if field == "format"), "{err}");
    assert_eq!(err.exit_code(), 1);

    let err = format::from_str("{\n  \"format\": \"oodn-class/1\",\n  oops\n}").unwrap_err();
    assert!(matches!(err, KbError::Parse { line: 3, .. }), "{err}");

    let text = fs::read_to_string(fixture("car.cls")).unwrap().replacen("\"integer\"", "\"complex\"", 1);
    let err = format::from_str(&text).unwrap_err();
    assert!(matches!(err, KbError::Schema { .. }), "{err}");
}

#[test]
fn invalid_classes_fail_validation() {
    let err = load(fixture("bad_projection.cls")).unwrap_err();
    match &err {
        KbError::Validation { violations, .. } => {
            assert!(violations.iter().any(|v| v.to_string().contains("`color`")), "{violations:?}");
        }
        other => panic!("{other}"),
    }
    assert_eq!(err.exit_code(), 3);

    let dir = tempfile::tempdir().unwrap();
    let mut bad = load(fixture("car.cls")).unwrap();
    if let AnyClass::Homogeneous(h) = &mut bad {
        h.spec.0.push(h.spec[0].clone());
    }
    let path = dir.path().join("bad.cls");
    assert!(matches!(save(&bad, &path), Err(KbError::Validation { .. })));
    assert!(!path.exists());
}

#[test]
fn descriptors() {
    let dir = tempfile::tempdir().unwrap();
    let v = load(fixture("vehicles.cls")).unwrap();
    let lineage = Lineage::new("union", vec!["Car".into(), "Motorcycle".into()]);
    let path = dir.path().join("v.json");
    oodn_kb::emit_descriptor(&v, &lineage, &path).unwrap();

    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"kind\": \"heterogeneous\""));
    assert!(text.ends_with("}\n"));
    let d = load_descriptor(&path).unwrap();
    assert_eq!(d.class, v);
    assert_eq!((d.op.as_str(), d.inputs.len()), ("union", 2));
    assert!(d.emitted_at.ends_with('Z'));
    assert_eq!(load(&path).unwrap(), v);

    // Fixed timestamps give fixed bytes.
    let a = descriptor::to_string(&v, &lineage, "2026-01-01T00:00:00Z");
    assert_eq!(a, descriptor::to_string(&v, &lineage, "2026-01-01T00:00:00Z"));
    assert_eq!(descriptor::from_str(&a).unwrap().emitted_at, "2026-01-01T00:00:00Z");

    let car = load(fixture("car.cls")).unwrap();
    let text = descriptor::to_string(&car, &Lineage::new("emit", vec!["Car".into()]), "2026-01-01T00:00:00Z");
    assert!(text.contains("\"kind\": \"homogeneous\""));

    // A plain class file is not a descriptor.
    assert!(load_descriptor(fixture("car.cls")).is_err());
}

#[test]
fn registry() {
    let dir = tempfile::tempdir().unwrap();
    let mut reg = Registry::open(dir.path()).unwrap();
    assert!(reg.is_empty());
    for f in ["vehicles.cls", "car.cls", "boat.cls"] {
        reg.insert(&load(fixture(f)).unwrap()).unwrap();
    }
    assert_eq!(reg.names().collect::<Vec<_>>(), ["Boat", "Car", "Vehicles"]);
    assert!(matches!(
        reg.insert(&load(fixture("car.cls")).unwrap()),
        Err(KbError::DuplicateName(_))
    ));

    let reopened = Registry::open(dir.path()).unwrap();
    assert_eq!(reopened.len(), 3);
    assert_eq!(reopened.get("Car").unwrap(), load(fixture("car.cls")).unwrap());
    assert!(matches!(reopened.get("Plane"), Err(KbError::UnknownName(_))));

    let mut reg = reopened;
    reg.remove("Boat").unwrap();
    assert!(!reg.contains("Boat"));
    reg.verify().unwrap();
    assert_eq!(Registry::open(dir.path()).unwrap().len(), 2);

    // A tampered entry is caught on open.
    fs::write(reg.path_of("Car").unwrap(), "{}").unwrap();
    assert!(Registry::open(dir.path()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_classes_round_trip(seed in any::<u64>()) {
        let c = ClassSampler::new(seed).class("R", 0.5);
        let text = format::to_string(&c);
        let back = format::from_str(&text).unwrap();
        prop_assert_eq!(&back, &canonicalize(&c));
        prop_assert_eq!(format::to_string(&back), text);
    }
}
