//! Curated orbits bundled with the library.

use crate::orbit_file::{parse_orbit, parse_raw, OrbitFileError};
use crate::period::{NilpotentOrbitData, RawOrbit};

const BUNDLED: &[(&str, &str)] = &[
    ("e1", include_str!("../datasets/e1.json")),
    ("e1-psi", include_str!("../datasets/e1-psi.json")),
    ("e2", include_str!("../datasets/e2.json")),
    ("e2-psi", include_str!("../datasets/e2-psi.json")),
    ("sym2e1", include_str!("../datasets/sym2e1.json")),
    ("e2-tensor", include_str!("../datasets/e2-tensor.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

/// JSON text of a bundled orbit; accepts `e1` and `e1.json`.
pub fn source(name: &str) -> Option<&'static str> {
    let key = name.strip_suffix(".json").unwrap_or(name);
    BUNDLED.iter().find(|(n, _)| *n == key).map(|(_, s)| *s)
}

pub fn raw(name: &str) -> Option<Result<RawOrbit, OrbitFileError>> {
    source(name).map(parse_raw)
}

pub fn load(name: &str) -> Option<Result<NilpotentOrbitData, OrbitFileError>> {
    source(name).map(parse_orbit)
}

/// Bundled orbit that is known to parse; panics otherwise.
pub fn builtin(name: &str) -> NilpotentOrbitData {
    match load(name) {
        Some(Ok(d)) => d,
        Some(Err(e)) => panic!("bundled orbit {name} is broken: {e}"),
        None => panic!("no bundled orbit named {name}"),
    }
}

pub fn e1() -> NilpotentOrbitData {
    builtin("e1")
}

pub fn e2() -> NilpotentOrbitData {
    builtin("e2")
}

pub fn sym2e1() -> NilpotentOrbitData {
    builtin("sym2e1")
}

pub fn e2_tensor() -> NilpotentOrbitData {
    builtin("e2-tensor")
}
