//! Inputs shared by the benchmarks.

use meshcy::mesh::{construct_family, FamilyAlgebra, FamilyParams};
use meshcy::{AlgebraElement, Rational};

/// Named family members with nontrivial completions.
pub fn fixtures() -> Vec<(&'static str, FamilyAlgebra<Rational>)> {
    let r = Rational::from;
    [
        ("J", FamilyParams::j()),
        ("D(3)", FamilyParams::dq(r(3))),
        (
            "A4(1,2,3,4)",
            FamilyParams::an(vec![r(1), r(2), r(3), r(4)]),
        ),
        ("B3(2,3,5)", FamilyParams::bn(vec![r(2), r(3), r(5)])),
    ]
    .into_iter()
    .map(|(name, p)| (name, construct_family(&p).expect("valid parameters")))
    .collect()
}

/// Sum of every path of length `k` from vertex 0 to itself.
pub fn all_paths(alg: &FamilyAlgebra<Rational>, k: usize) -> AlgebraElement<Rational> {
    AlgebraElement::from_terms(
        alg.quiver()
            .paths(k, 0, 0)
            .into_iter()
            .map(|p| (p, Rational::from(1))),
    )
}
