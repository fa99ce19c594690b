#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Runs the `oodn` binary.
pub fn oodn<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_oodn"))
        .args(args)
        .output()
        .expect("oodn binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Golden cases: (subcommand, inputs, result name, golden file).
pub const GOLDEN_CASES: &[(&str, &[&str], &str, &str)] = &[
    ("union", &["car.cls", "motorcycle.cls"], "Vehicles", "union_car_motorcycle.cls"),
    ("union", &["car.cls", "car.cls"], "Car", "union_car_car.cls"),
    ("union", &["car.cls", "boat.cls"], "CarBoat", "union_car_boat.cls"),
    ("intersect", &["car.cls", "motorcycle.cls"], "Common", "intersect_car_motorcycle.cls"),
    ("intersect", &["car.cls", "car.cls"], "Car", "intersect_car_car.cls"),
    ("diff", &["car.cls", "motorcycle.cls"], "CarOnly", "diff_car_motorcycle.cls"),
    ("diff", &["car.cls", "motorcycle.cls", "boat.cls"], "CarOnly", "diff_car_motorcycle_boat.cls"),
    ("symdiff", &["car.cls", "motorcycle.cls"], "Unique", "symdiff_car_motorcycle.cls"),
    ("symdiff", &["car.cls", "carplus.cls"], "Extra", "symdiff_car_carplus.cls"),
];

/// The fixture files used as exploiter inputs.
pub const FIXTURES: &[&str] = &[
    "car.cls",
    "motorcycle.cls",
    "boat.cls",
    "nooverlap.cls",
    "carplus.cls",
    "vehicles.cls",
];
