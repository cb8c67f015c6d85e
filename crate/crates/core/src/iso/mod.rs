//! Graded isomorphisms between mesh algebras: verification of candidate
//! maps, closed-form deciders for each family, and the two-vertex
//! classification.

mod deciders;
mod map;
mod two_vertex;

pub use deciders::{an_iso_decide, bn_iso_decide, two_param_iso_decide, IsoVerdict};
pub use map::{is_isomorphism, GradedMap, IsoCheck};
pub use two_vertex::{
    classify_two_vertex, enumerate_cy2_matrices, kronecker_invariant, pairwise_distinct_check,
    two_vertex_iso_decide, ClassificationResult, Cy2Case, EigenData, PairwiseReport, PairwiseRow,
};

#[cfg(test)]
mod tests;
