pub mod graph;
pub mod cli;
pub mod construct;
pub mod enumgen;
pub mod nclogic;
pub mod realize;

pub use graph::{ExclusivityGraph, GraphError};
