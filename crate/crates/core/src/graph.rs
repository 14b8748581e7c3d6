//! Directed weighted graphs in adjacency-array form.

use crate::error::GraphError;

pub type VertexId = u32;
pub type EdgeId = u32;
/// Edge weight as read from the input.
pub type Weight = u32;
/// Accumulated path length. Wide enough that no simple path sum overflows.
pub type Distance = u64;

/// Distance of unreachable vertices.
pub const INFINITY: Distance = Distance::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: Weight,
}

impl Edge {
    pub fn new(tail: VertexId, head: VertexId, weight: Weight) -> Self {
        Edge { tail, head, weight }
    }
}

/// Read-only view used by the generic search routines.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn for_each_out<F: FnMut(VertexId, Distance)>(&self, v: VertexId, f: F);
    fn for_each_in<F: FnMut(VertexId, Distance)>(&self, v: VertexId, f: F);
}

/// A normalized directed graph: no self-loops, at most one edge per ordered
/// pair. Edges are stored sorted by `(tail, head)`, so the edge id of an edge
/// is its position in the forward adjacency array.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    first_out: Vec<EdgeId>,
    tails: Vec<VertexId>,
    heads: Vec<VertexId>,
    weights: Vec<Weight>,
    first_in: Vec<EdgeId>,
    in_edges: Vec<EdgeId>,
}

impl Graph {
    /// Builds a graph from an arbitrary arc list. Self-loops are dropped and
    /// parallel arcs collapse to the minimum weight.
    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Graph, GraphError> {
        if vertex_count > VertexId::MAX as usize {
            return Err(GraphError::TooManyVertices(vertex_count));
        }
        let mut list: Vec<Edge> = Vec::new();
        for e in edges {
            if e.tail as usize >= vertex_count || e.head as usize >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    tail: e.tail,
                    head: e.head,
                    vertex_count,
                });
            }
            if e.tail != e.head {
                list.push(e);
            }
        }
        list.sort_unstable();
        // sorted by (tail, head, weight): the first of each run is the minimum
        list.dedup_by(|later, first| later.tail == first.tail && later.head == first.head);
        if list.len() > EdgeId::MAX as usize {
            return Err(GraphError::TooManyEdges(list.len()));
        }
        Ok(Self::from_sorted_unique(vertex_count, list))
    }

    fn from_sorted_unique(vertex_count: usize, list: Vec<Edge>) -> Graph {
        let m = list.len();
        let mut first_out = vec![0 as EdgeId; vertex_count + 1];
        let mut tails = Vec::with_capacity(m);
        let mut heads = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        for e in &list {
            first_out[e.tail as usize + 1] += 1;
            tails.push(e.tail);
            heads.push(e.head);
            weights.push(e.weight);
        }
        for v in 0..vertex_count {
            first_out[v + 1] += first_out[v];
        }

        let mut first_in = vec![0 as EdgeId; vertex_count + 1];
        for &h in &heads {
            first_in[h as usize + 1] += 1;
        }
        for v in 0..vertex_count {
            first_in[v + 1] += first_in[v];
        }
        let mut fill = first_in.clone();
        let mut in_edges = vec![0 as EdgeId; m];
        // iterating in (tail, head) order keeps each in-list sorted by tail
        for (id, &h) in heads.iter().enumerate() {
            let slot = &mut fill[h as usize];
            in_edges[*slot as usize] = id as EdgeId;
            *slot += 1;
        }

        Graph {
            first_out,
            tails,
            heads,
            weights,
            first_in,
            in_edges,
        }
    }

    pub fn empty(vertex_count: usize) -> Graph {
        Self::from_sorted_unique(vertex_count, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.first_out.len().saturating_sub(1)
    }

    pub fn edge_count(&self) -> usize {
        self.heads.len()
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        let i = id as usize;
        Edge::new(self.tails[i], self.heads[i], self.weights[i])
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        (0..self.edge_count()).map(move |i| self.edge(i as EdgeId))
    }

    pub fn tail(&self, id: EdgeId) -> VertexId {
        self.tails[id as usize]
    }

    pub fn head(&self, id: EdgeId) -> VertexId {
        self.heads[id as usize]
    }

    pub fn weight(&self, id: EdgeId) -> Weight {
        self.weights[id as usize]
    }

    /// Edge ids of the outgoing edges of `v`, in ascending head order.
    pub fn out_edges(&self, v: VertexId) -> std::ops::Range<EdgeId> {
        self.first_out[v as usize]..self.first_out[v as usize + 1]
    }

    /// Edge ids of the incoming edges of `v`, in ascending tail order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        let lo = self.first_in[v as usize] as usize;
        let hi = self.first_in[v as usize + 1] as usize;
        &self.in_edges[lo..hi]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges(v).len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_edges(v).len()
    }

    pub fn find_edge(&self, tail: VertexId, head: VertexId) -> Option<EdgeId> {
        let range = self.out_edges(tail);
        let slice = &self.heads[range.start as usize..range.end as usize];
        slice.binary_search(&head).ok().map(|i| range.start + i as EdgeId)
    }

    /// Renumbers vertices: `permutation[old] = new`.
    pub fn permuted(&self, permutation: &[VertexId]) -> Graph {
        assert_eq!(permutation.len(), self.vertex_count());
        let mut list: Vec<Edge> = self
            .edges()
            .map(|e| Edge::new(permutation[e.tail as usize], permutation[e.head as usize], e.weight))
            .collect();
        list.sort_unstable();
        Self::from_sorted_unique(self.vertex_count(), list)
    }

    /// Sum of all edge weights; an upper bound on any simple path length.
    pub fn total_weight(&self) -> Distance {
        self.weights.iter().map(|&w| w as Distance).sum()
    }
}

impl Adjacency for Graph {
    fn vertex_count(&self) -> usize {
        Graph::vertex_count(self)
    }

    fn for_each_out<F: FnMut(VertexId, Distance)>(&self, v: VertexId, mut f: F) {
        for e in self.out_edges(v) {
            f(self.heads[e as usize], self.weights[e as usize] as Distance);
        }
    }

    fn for_each_in<F: FnMut(VertexId, Distance)>(&self, v: VertexId, mut f: F) {
        for &e in self.in_edges(v) {
            f(self.tails[e as usize], self.weights[e as usize] as Distance);
        }
    }
}
