//! Total forcing and zero forcing on graphs.
//!
//! The library implements the forcing propagation process, exact solvers
//! for the forcing number `F(G)` and total forcing number `F_t(G)`,
//! constructive generators and recognizers for the extremal tree families
//! attaining the tight bounds on `F_t` for trees, and an exhaustive
//! enumerator of free trees for sweeping those bounds over all small
//! trees.

pub mod canon;
pub mod enumerate;
pub mod families;
pub mod forcing;
pub mod graph;
pub mod io;
pub mod set;
pub mod solve;

pub use canon::{canonical_code, TreeCode};
pub use forcing::{closure, is_forcing_set, is_total_forcing_set, ClosureResult};
pub use graph::{Graph, GraphError, GraphStats};
pub use set::VertexSet;
pub use solve::{forcing_number, total_forcing_number, SolveResult, SolverConfig};
