//! Polynomial special cases: colorful circuits and paths in digraphs,
//! colorful matroid bases, labeled cross-polytopes, and the complement
//! complex of a pair configuration.

pub mod complex;
pub mod crosspolytope;
pub mod digraph;
pub mod matching;
pub mod matroid;

pub use complex::{Census, ComplementComplex, Parity};
pub use crosspolytope::{crosspolytope_another, crosspolytope_decide, CrossPolytopeLabeling, Facet, Sign};
pub use digraph::{colorful_circuit, colorful_path, ArcFamily, Digraph};
pub use matching::{hall_violator, max_matching, Matching};
pub use matroid::{
    another_colorful_basis, check_axioms, greedy_colorful_basis, is_colorful_basis, matroid_intersection,
    AnyMatroid, Deletion, GraphicMatroid, LinearMatroid, Matroid, PartitionMatroid, UniformMatroid,
};
