//! Edge hierarchies: a shortest-path speedup technique that ranks edges
//! instead of vertices, together with a contraction hierarchy baseline,
//! turn-cost expansion and an evaluation harness.

pub mod bench;
pub mod ch;
pub mod dijkstra;
pub mod dimacs;
pub mod eh;
pub mod error;
pub mod graph;
pub mod heap;
pub mod io;
pub mod matching;
pub mod reorder;
pub mod stats;
pub mod synthetic;
pub mod turns;

#[cfg(test)]
mod testutil;

pub use ch::{build_contraction_hierarchy, ChQuery, ContractionHierarchy};
pub use dijkstra::{bidirectional_dijkstra, dijkstra, dijkstra_rank_targets};
pub use eh::{build_edge_hierarchy, EdgeHierarchy, EhQuery, OracleKind, StallPolicy};
pub use graph::{Distance, Edge, EdgeId, Graph, VertexId, Weight, INFINITY};
pub use stats::QueryStats;
