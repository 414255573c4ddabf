use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {v} out of range for a diagram on [{n}]")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("diagram needs at least 3 vertices, got n = {n}")]
    TooFewVertices { n: usize },
    #[error("n = {n} exceeds the bitset cap of 64; larger diagrams are not supported")]
    TooManyVertices { n: usize },
    #[error("propagator ({v}, {v}) is degenerate")]
    LoopPropagator { v: usize },
    #[error("duplicate propagator ({i}, {j})")]
    DuplicatePropagator { i: usize, j: usize },
    #[error("propagator ({i}, {j}) does not belong to the diagram")]
    UnknownPropagator { i: usize, j: usize },
    #[error("ambient size mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("the empty propagator set is not allowed here")]
    EmptyPropagatorSet,
    #[error("diagram is not weakly admissible")]
    NotWeaklyAdmissible,
    #[error("set is not a flat of the matroid")]
    NotAFlat,
    #[error("a matroid needs at least one basis")]
    EmptyBaseFamily,
    #[error("basis of size {got} in a family of rank {expected}")]
    BasisSizeMismatch { got: usize, expected: usize },
    #[error("base family has rank {got}, but rank {declared} was declared")]
    RankMismatch { got: usize, declared: usize },
    #[error("ground sets have different sizes ({left} vs {right})")]
    GroundSizeMismatch { left: usize, right: usize },
    #[error("ground set of size {n} exceeds the enumeration bound {max}")]
    SizeBoundExceeded { n: usize, max: usize },
    #[error("diagonal ({a}, {b}) joins cyclically adjacent vertices")]
    AdjacentDiagonal { a: usize, b: usize },
    #[error("duplicate diagonal ({a}, {b})")]
    DuplicateDiagonal { a: usize, b: usize },
    #[error("diagonals ({a}, {b}) and ({c}, {d}) cross")]
    CrossingDiagonals { a: usize, b: usize, c: usize, d: usize },
    #[error("diagonal set is not a triangulation of the region")]
    NotATriangulation,
    #[error("chord endpoints coincide")]
    DegenerateChord,
    #[error("realized matroid still disagrees with the diagram matroid after {attempts} samples")]
    RealizationDisagreement { attempts: usize },
}
