//! Shared fixtures for the criterion benchmarks.

use logser_core::{ln_rational_vector, ln_vector, make_vector, parse_rational, CoefficientVector};

/// Vectors covering small and larger moduli.
pub fn fixtures() -> Vec<(&'static str, CoefficientVector)> {
    let zero4 = ["1", "-3", "1", "1"]
        .iter()
        .map(|c| parse_rational(c).unwrap())
        .collect();
    vec![
        ("ln2", ln_vector(2).unwrap()),
        ("ln10", ln_vector(10).unwrap()),
        ("ln4/3", ln_rational_vector(4, 3).unwrap()),
        ("zero4", make_vector(4, zero4).unwrap()),
        ("ln30", ln_vector(30).unwrap()),
    ]
}
