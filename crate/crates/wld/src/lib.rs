//! Wilson loop diagrams and the combinatorics they generate.
//!
//! A Wilson loop diagram is a cyclically ordered vertex set `[n]` together
//! with a set of propagators (unordered vertex pairs). This crate builds the
//! surrounding machinery: support/flat set algebra, admissibility predicates,
//! the transversal matroid of a diagram, the bijection with polygon
//! dissections, retriangulation equivalence classes, and an exact-rational
//! secondary-polytope realization of the associahedron used to count faces up
//! to parallelism.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to share across threads.

mod assoc;
mod diagram;
mod dissection;
mod error;
mod matroid;
mod realization;
mod sets;

pub use assoc::{
    count_nonparallel_faces, default_polygon, edge_direction, face_of, faces_parallel, omega_plus,
    rational_dot, secondary_vertex, triangle_area, ParallelClass, Point, PolygonRealization, Rat,
    SecondaryFace, SecondaryVertex, Side, MAX_FACE_COUNTING,
};
pub use diagram::{CMatrixPattern, Propagator, WilsonLoopDiagram};
pub use dissection::{
    diagram_of, dissection_of, enumerate_dissections, enumerate_weakly_admissible,
    equivalence_class, equivalence_class_size, equivalence_key, equivalent, exact_subdiagrams,
    piece_subgraph, triangulations_of_region, DualTree, DualTreeNode, MaximalDecomposition,
    PolygonDissection, TriangulatedPiece, MAX_ENUMERATION,
};
pub use error::{Error, Result};
pub use matroid::{
    hall_independent, hall_rank, matroid_of, matroid_of_permissive, matroids_equal,
    FlatDecomposition, Matroid, MAX_GROUND,
};
pub use realization::{
    realization_rank_oracle, realization_rank_oracle_with, RealizationSample, DEFAULT_ATTEMPTS,
};
pub use sets::{PropSet, VertexSet};

/// Catalan number `C(m) = binom(2m, m) / (m + 1)`.
///
/// `catalan(m)` counts the triangulations of a convex `(m + 2)`-gon.
pub fn catalan(m: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..m as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}
