//! Small algebras shipped with the crate.

use crate::algebra::FiniteAlgebra;

const ENTRIES: &[(&str, &str)] = &[
    ("sl2", include_str!("../corpus/sl2.json")),
    ("z2", include_str!("../corpus/z2.json")),
    ("l2", include_str!("../corpus/l2.json")),
    ("z2xz2", include_str!("../corpus/z2xz2.json")),
    ("m3", include_str!("../corpus/m3.json")),
    ("sl3", include_str!("../corpus/sl3.json")),
    ("trivial", include_str!("../corpus/trivial.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(name, _)| *name)
}

/// The JSON source of a corpus algebra.
pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn load(name: &str) -> Option<FiniteAlgebra> {
    source(name).map(|text| FiniteAlgebra::from_json(text).expect("corpus files are valid"))
}

/// Every corpus algebra, in a fixed order.
pub fn all() -> Vec<FiniteAlgebra> {
    names().filter_map(load).collect()
}
