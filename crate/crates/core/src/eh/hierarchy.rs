use super::Rank;
use crate::ch::offsets;
use crate::graph::{Distance, EdgeId, VertexId};

/// A hierarchy edge in internal (reordered) vertex ids. `via` is
/// `VertexId::MAX` for original edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EhEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: Distance,
    pub rank: Rank,
    pub via: VertexId,
}

impl EhEdge {
    pub fn is_shortcut(&self) -> bool {
        self.via != VertexId::MAX
    }
}

/// Ranked edges with forward and backward adjacency, each sorted by
/// descending rank. Every edge is stored once and indexed from both ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeHierarchy {
    /// `permutation[external] = internal`.
    pub(crate) permutation: Vec<VertexId>,
    pub(crate) inverse: Vec<VertexId>,
    /// Sorted by tail, then descending rank.
    pub(crate) edges: Vec<EhEdge>,
    pub(crate) first_out: Vec<u32>,
    /// Edge ids sorted by head, then descending rank.
    pub(crate) in_edges: Vec<EdgeId>,
    pub(crate) first_in: Vec<u32>,
}

impl EdgeHierarchy {
    /// `edges` use internal ids already; `permutation` maps external ids to
    /// internal ones.
    pub fn from_edges(permutation: Vec<VertexId>, mut edges: Vec<EhEdge>) -> Self {
        let n = permutation.len();
        edges.sort_by(|a, b| a.tail.cmp(&b.tail).then(b.rank.cmp(&a.rank)));
        let first_out = offsets(n, edges.iter().map(|e| e.tail));
        let mut in_edges: Vec<EdgeId> = (0..edges.len() as EdgeId).collect();
        in_edges.sort_by(|&a, &b| {
            let (a, b) = (&edges[a as usize], &edges[b as usize]);
            a.head.cmp(&b.head).then(b.rank.cmp(&a.rank))
        });
        let first_in = offsets(n, in_edges.iter().map(|&e| edges[e as usize].head));
        let inverse = invert(&permutation);
        EdgeHierarchy {
            permutation,
            inverse,
            edges,
            first_out,
            in_edges,
            first_in,
        }
    }

    /// Rebuilds from stored arrays, checking that they describe a hierarchy.
    pub(crate) fn from_raw(
        permutation: Vec<VertexId>,
        edges: Vec<EhEdge>,
        first_out: Vec<u32>,
        in_edges: Vec<EdgeId>,
        first_in: Vec<u32>,
    ) -> Result<Self, String> {
        let n = permutation.len();
        let m = edges.len();
        let mut seen = vec![false; n];
        for &p in &permutation {
            if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
                return Err("permutation is not a bijection".into());
            }
        }
        for e in &edges {
            if e.tail as usize >= n || e.head as usize >= n {
                return Err("edge endpoint out of range".into());
            }
            if e.is_shortcut() && e.via as usize >= n {
                return Err("via vertex out of range".into());
            }
        }
        check_offsets(&first_out, n, m)?;
        check_offsets(&first_in, n, m)?;
        if in_edges.len() != m {
            return Err("backward edge index has wrong length".into());
        }
        let mut used = vec![false; m];
        for &e in &in_edges {
            if e as usize >= m || std::mem::replace(&mut used[e as usize], true) {
                return Err("backward edge index is not a permutation".into());
            }
        }
        for v in 0..n {
            let out = &edges[first_out[v] as usize..first_out[v + 1] as usize];
            if out.iter().any(|e| e.tail as usize != v) || out.windows(2).any(|w| w[0].rank < w[1].rank) {
                return Err(format!("forward adjacency of vertex {v} is inconsistent"));
            }
            let inc = &in_edges[first_in[v] as usize..first_in[v + 1] as usize];
            if inc.iter().any(|&e| edges[e as usize].head as usize != v)
                || inc
                    .windows(2)
                    .any(|w| edges[w[0] as usize].rank < edges[w[1] as usize].rank)
            {
                return Err(format!("backward adjacency of vertex {v} is inconsistent"));
            }
        }
        let inverse = invert(&permutation);
        Ok(EdgeHierarchy {
            permutation,
            inverse,
            edges,
            first_out,
            in_edges,
            first_in,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.permutation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn shortcut_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_shortcut()).count()
    }

    pub fn edges(&self) -> &[EhEdge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &EhEdge {
        &self.edges[id as usize]
    }

    pub fn permutation(&self) -> &[VertexId] {
        &self.permutation
    }

    pub fn to_internal(&self, v: VertexId) -> VertexId {
        self.permutation[v as usize]
    }

    pub fn to_external(&self, v: VertexId) -> VertexId {
        self.inverse[v as usize]
    }

    /// Outgoing edge ids of internal vertex `v`, highest rank first.
    pub fn out_edges(&self, v: VertexId) -> std::ops::Range<EdgeId> {
        self.first_out[v as usize]..self.first_out[v as usize + 1]
    }

    /// Incoming edge ids of internal vertex `v`, highest rank first.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[self.first_in[v as usize] as usize..self.first_in[v as usize + 1] as usize]
    }

    pub(crate) fn first_out(&self) -> &[u32] {
        &self.first_out
    }

    pub(crate) fn first_in(&self) -> &[u32] {
        &self.first_in
    }

    pub(crate) fn in_edge_index(&self) -> &[EdgeId] {
        &self.in_edges
    }

    /// Edge `(tail, head)` in internal ids, if present.
    pub fn find_edge(&self, tail: VertexId, head: VertexId) -> Option<EdgeId> {
        self.out_edges(tail).find(|&e| self.edges[e as usize].head == head)
    }
}

fn invert(permutation: &[VertexId]) -> Vec<VertexId> {
    let mut inverse = vec![0; permutation.len()];
    for (old, &new) in permutation.iter().enumerate() {
        inverse[new as usize] = old as VertexId;
    }
    inverse
}

fn check_offsets(first: &[u32], n: usize, m: usize) -> Result<(), String> {
    if first.len() != n + 1 || first[0] != 0 || first[n] as usize != m {
        return Err("offset array has wrong shape".into());
    }
    if first.windows(2).any(|w| w[0] > w[1]) {
        return Err("offset array is not monotone".into());
    }
    Ok(())
}
