//! Inputs shared by the benchmarks.

use dgcat_core::{corpus, DgCategory, FieldSpec};

pub const Q: FieldSpec = FieldSpec::Rationals;

/// Named categories of increasing size for homology benchmarks.
pub fn homology_cases() -> Vec<(&'static str, DgCategory)> {
    let dual = corpus::dual_numbers(Q);
    let path = corpus::path_a2(Q);
    vec![
        ("unit", corpus::unit(Q)),
        ("dual_numbers", dual.clone()),
        ("path_a2", path.clone()),
        ("dual_squared", dual.tensor(&dual).expect("same field")),
        ("path_squared", path.tensor(&path).expect("same field")),
    ]
}
