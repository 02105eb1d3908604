//! Noncontextual assignments and the pair verdicts built on them.
//!
//! An assignment gives each vertex true or false so that no edge has both
//! ends true (exclusiveness) and every `d`-clique has a true vertex
//! (completeness). Cliques with fewer than `d` vertices carry no constraint.

mod certificate;
mod classify;
mod forbidden;
mod solver;

pub use certificate::Certificate;
pub use classify::{
    classify_all_pairs, classify_pair, is_critical_tifs, is_tifs, is_tits, is_true_iff_true, Classification, Kind,
};
pub use forbidden::{forbidden_family, passes_dimension_filters, DimensionFilter, ForbiddenFamily};
pub use solver::{count_assignments, find_assignment, Assignment, PartialAssignment, Solver};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("dimension {0} is below 3")]
    Dimension(usize),
    #[error("forbidden families start at dimension 1, got {0}")]
    FamilyDimension(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} is fixed both true and false")]
    Contradictory(usize),
    #[error("fixed values make adjacent vertices {0} and {1} both true")]
    FixedNotExclusive(usize, usize),
    #[error("designated vertices must differ, got {0} twice")]
    SamePair(usize),
    #[error("designated vertices {0} and {1} are adjacent")]
    AdjacentPair(usize, usize),
    #[error("({a}, {b}) is not a TIFS")]
    NotTifs { a: usize, b: usize },
}
