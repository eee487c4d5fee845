//! Exact strong domination numbers, composition operators for building
//! graphs from components (gluings, chains, links, circuits), closed-form
//! bounds with report assembly, proof-style dominating-set constructions,
//! and seeded campaign tooling to check every bound against exact values.

pub mod bounds;
pub mod campaign;
pub mod compose;
pub mod construct;
pub mod families;
pub mod graph;
pub mod solver;

pub use graph::{Graph, GraphError, ParseError, VertexLabel, VertexSet};
pub use solver::{SolveError, SolveResult, SolverConfig};
