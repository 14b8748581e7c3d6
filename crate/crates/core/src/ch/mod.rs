//! Contraction hierarchies: the baseline technique and the exact distance
//! oracle used while building edge hierarchies.

mod build;
mod query;

pub use build::{build_contraction_hierarchy, build_contraction_hierarchy_with, ChParams};
pub use query::{ch_query, ChQuery};

use crate::graph::{Distance, VertexId};

/// A hierarchy edge. `via` is `VertexId::MAX` for original edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: Distance,
    pub via: VertexId,
}

/// Every edge is stored once, at its endpoint that was contracted first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionHierarchy {
    /// Contraction position of every vertex.
    pub(crate) order: Vec<u32>,
    /// Edges `(v, x)` with `x` above `v`, grouped by `v`.
    pub(crate) up_first: Vec<u32>,
    pub(crate) up: Vec<ChEdge>,
    /// Edges `(x, v)` with `x` above `v`, grouped by `v`.
    pub(crate) down_first: Vec<u32>,
    pub(crate) down: Vec<ChEdge>,
}

impl ContractionHierarchy {
    pub(crate) fn from_parts(order: Vec<u32>, edges: Vec<ChEdge>) -> Self {
        let n = order.len();
        let (mut up, mut down): (Vec<ChEdge>, Vec<ChEdge>) = edges
            .into_iter()
            .partition(|e| order[e.tail as usize] < order[e.head as usize]);
        up.sort_by_key(|e| (e.tail, e.head));
        down.sort_by_key(|e| (e.head, e.tail));
        let up_first = offsets(n, up.iter().map(|e| e.tail));
        let down_first = offsets(n, down.iter().map(|e| e.head));
        ContractionHierarchy {
            order,
            up_first,
            up,
            down_first,
            down,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn edge_count(&self) -> usize {
        self.up.len() + self.down.len()
    }

    pub fn shortcut_count(&self) -> usize {
        self.up
            .iter()
            .chain(&self.down)
            .filter(|e| e.via != VertexId::MAX)
            .count()
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn up_edges(&self, v: VertexId) -> &[ChEdge] {
        &self.up[self.up_first[v as usize] as usize..self.up_first[v as usize + 1] as usize]
    }

    pub fn down_edges(&self, v: VertexId) -> &[ChEdge] {
        &self.down[self.down_first[v as usize] as usize..self.down_first[v as usize + 1] as usize]
    }

    /// All edges, upward block first.
    pub fn edges(&self) -> impl Iterator<Item = &ChEdge> {
        self.up.iter().chain(&self.down)
    }
}

pub(crate) fn offsets(n: usize, keys: impl Iterator<Item = VertexId>) -> Vec<u32> {
    let mut first = vec![0u32; n + 1];
    for k in keys {
        first[k as usize + 1] += 1;
    }
    for i in 0..n {
        first[i + 1] += first[i];
    }
    first
}
