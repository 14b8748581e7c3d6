//! Vertex contraction with bounded witness searches and lazy priority
//! updates.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{ChEdge, ContractionHierarchy};
use crate::graph::{Distance, Graph, VertexId, INFINITY};
use crate::heap::IndexedHeap;

/// Tuning constants of the contraction order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChParams {
    pub edge_difference_weight: i64,
    pub hop_weight: i64,
    pub level_weight: i64,
    /// Maximum number of vertices a witness search may settle.
    pub witness_settle_limit: usize,
}

impl Default for ChParams {
    fn default() -> Self {
        ChParams {
            edge_difference_weight: 2,
            hop_weight: 1,
            level_weight: 1,
            witness_settle_limit: 50,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    other: VertexId,
    weight: Distance,
    hops: u32,
    via: VertexId,
}

/// Overlay graph of the vertices not yet contracted.
pub(crate) struct ContractionState {
    out: Vec<Vec<Arc>>,
    inc: Vec<Vec<Arc>>,
    contracted: Vec<bool>,
    level: Vec<u32>,
    witness: WitnessSearch,
    params: ChParams,
}

/// Result of simulating the contraction of one vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct ContractionPlan {
    /// (tail, head, weight, hops)
    pub shortcuts: Vec<(VertexId, VertexId, Distance, u32)>,
    pub degree: usize,
}

impl ContractionState {
    pub(crate) fn new(graph: &Graph, params: ChParams) -> Self {
        let n = graph.vertex_count();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for e in graph.edges() {
            out[e.tail as usize].push(Arc {
                other: e.head,
                weight: e.weight as Distance,
                hops: 1,
                via: VertexId::MAX,
            });
            inc[e.head as usize].push(Arc {
                other: e.tail,
                weight: e.weight as Distance,
                hops: 1,
                via: VertexId::MAX,
            });
        }
        ContractionState {
            out,
            inc,
            contracted: vec![false; n],
            level: vec![0; n],
            witness: WitnessSearch::new(n),
            params,
        }
    }

    pub(crate) fn plan(&mut self, v: VertexId) -> ContractionPlan {
        let vi = v as usize;
        let mut shortcuts = Vec::new();
        let limit = self.params.witness_settle_limit;
        for inc in &self.inc[vi] {
            let u = inc.other;
            let targets: Vec<(VertexId, Distance, u32)> = self.out[vi]
                .iter()
                .filter(|o| o.other != u)
                .map(|o| (o.other, inc.weight + o.weight, inc.hops + o.hops))
                .collect();
            if targets.is_empty() {
                continue;
            }
            let max_dist = targets.iter().map(|t| t.1).max().unwrap();
            self.witness.run(&self.out, u, v, max_dist, limit);
            for (w, via_dist, hops) in targets {
                if self.witness.dist(w) > via_dist {
                    shortcuts.push((u, w, via_dist, hops));
                }
            }
        }
        ContractionPlan {
            shortcuts,
            degree: self.inc[vi].len() + self.out[vi].len(),
        }
    }

    pub(crate) fn importance(&mut self, v: VertexId) -> i64 {
        let plan = self.plan(v);
        let hops: i64 = plan.shortcuts.iter().map(|s| s.3 as i64).sum();
        let p = &self.params;
        p.edge_difference_weight * (plan.shortcuts.len() as i64 - plan.degree as i64)
            + p.hop_weight * hops
            + p.level_weight * self.level[v as usize] as i64
    }

    /// Removes `v`, emitting its remaining edges as hierarchy edges and
    /// inserting the planned shortcuts. Returns the affected neighbors.
    pub(crate) fn contract(&mut self, v: VertexId, sink: &mut Vec<ChEdge>) -> Vec<VertexId> {
        let plan = self.plan(v);
        let vi = v as usize;
        let out = std::mem::take(&mut self.out[vi]);
        let inc = std::mem::take(&mut self.inc[vi]);
        self.contracted[vi] = true;
        let mut neighbors = Vec::with_capacity(out.len() + inc.len());
        for a in &out {
            sink.push(ChEdge {
                tail: v,
                head: a.other,
                weight: a.weight,
                via: a.via,
            });
            self.inc[a.other as usize].retain(|b| b.other != v);
            neighbors.push(a.other);
        }
        for a in &inc {
            sink.push(ChEdge {
                tail: a.other,
                head: v,
                weight: a.weight,
                via: a.via,
            });
            self.out[a.other as usize].retain(|b| b.other != v);
            neighbors.push(a.other);
        }
        for (u, w, weight, hops) in plan.shortcuts {
            self.insert_or_lower(u, w, weight, hops, v);
        }
        let next_level = self.level[vi] + 1;
        neighbors.sort_unstable();
        neighbors.dedup();
        for &x in &neighbors {
            let l = &mut self.level[x as usize];
            *l = (*l).max(next_level);
        }
        neighbors
    }

    fn insert_or_lower(&mut self, u: VertexId, w: VertexId, weight: Distance, hops: u32, via: VertexId) {
        let arc = Arc {
            other: w,
            weight,
            hops,
            via,
        };
        match self.out[u as usize].iter_mut().find(|a| a.other == w) {
            Some(existing) => {
                if weight < existing.weight {
                    *existing = arc;
                    let back = self.inc[w as usize]
                        .iter_mut()
                        .find(|a| a.other == u)
                        .expect("mirrored arc");
                    *back = Arc { other: u, ..arc };
                }
            }
            None => {
                self.out[u as usize].push(arc);
                self.inc[w as usize].push(Arc { other: u, ..arc });
            }
        }
    }
}

/// Bounded one-to-many Dijkstra on the overlay graph avoiding one vertex.
struct WitnessSearch {
    dist: Vec<Distance>,
    stamp: Vec<u32>,
    generation: u32,
    heap: IndexedHeap<Distance>,
}

impl WitnessSearch {
    fn new(n: usize) -> Self {
        WitnessSearch {
            dist: vec![INFINITY; n],
            stamp: vec![0; n],
            generation: 0,
            heap: IndexedHeap::new(n),
        }
    }

    fn dist(&self, v: VertexId) -> Distance {
        if self.stamp[v as usize] == self.generation {
            self.dist[v as usize]
        } else {
            INFINITY
        }
    }

    fn run(&mut self, out: &[Vec<Arc>], source: VertexId, avoid: VertexId, max_dist: Distance, limit: usize) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        self.heap.clear();
        self.stamp[source as usize] = self.generation;
        self.dist[source as usize] = 0;
        self.heap.push_or_decrease(source, 0);
        let mut settled = 0;
        while let Some((d, u)) = self.heap.pop() {
            if d > max_dist || settled >= limit {
                break;
            }
            settled += 1;
            for a in &out[u as usize] {
                if a.other == avoid {
                    continue;
                }
                let nd = d + a.weight;
                if nd < self.dist(a.other) {
                    self.stamp[a.other as usize] = self.generation;
                    self.dist[a.other as usize] = nd;
                    self.heap.push_or_decrease(a.other, nd);
                }
            }
        }
    }
}

pub fn build_contraction_hierarchy(graph: &Graph) -> ContractionHierarchy {
    build_contraction_hierarchy_with(graph, ChParams::default())
}

pub fn build_contraction_hierarchy_with(graph: &Graph, params: ChParams) -> ContractionHierarchy {
    let n = graph.vertex_count();
    let mut state = ContractionState::new(graph, params);
    let mut current = vec![0i64; n];
    let mut queue = BinaryHeap::with_capacity(n);
    for v in 0..n as VertexId {
        current[v as usize] = state.importance(v);
        queue.push(Reverse((current[v as usize], v)));
    }
    let mut order = vec![0u32; n];
    let mut next_position = 0u32;
    let mut edges = Vec::with_capacity(graph.edge_count() * 2);
    while let Some(Reverse((priority, v))) = queue.pop() {
        if state.contracted[v as usize] || priority != current[v as usize] {
            continue;
        }
        let fresh = state.importance(v);
        if fresh != priority {
            current[v as usize] = fresh;
            let beaten = queue.peek().is_some_and(|&Reverse(next)| (fresh, v) > next);
            if beaten {
                queue.push(Reverse((fresh, v)));
                continue;
            }
        }
        order[v as usize] = next_position;
        next_position += 1;
        for x in state.contract(v, &mut edges) {
            let p = state.importance(x);
            current[x as usize] = p;
            queue.push(Reverse((p, x)));
        }
    }
    ContractionHierarchy::from_parts(order, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn path_middle_needs_shortcut() {
        let g = Graph::from_edges(3, [Edge::new(0, 1, 3), Edge::new(1, 2, 4)]).unwrap();
        let mut state = ContractionState::new(&g, ChParams::default());
        let plan = state.plan(1);
        assert_eq!(plan.shortcuts, vec![(0, 2, 7, 2)]);
    }

    #[test]
    fn witness_suppresses_shortcut() {
        let g = Graph::from_edges(3, [Edge::new(0, 1, 3), Edge::new(1, 2, 4), Edge::new(0, 2, 5)]).unwrap();
        let mut state = ContractionState::new(&g, ChParams::default());
        assert!(state.plan(1).shortcuts.is_empty());
    }

    #[test]
    fn leaf_has_minimal_edge_difference() {
        let g = Graph::from_edges(3, [Edge::new(0, 1, 1), Edge::new(1, 0, 1), Edge::new(1, 2, 1)]).unwrap();
        let mut state = ContractionState::new(&g, ChParams::default());
        // vertex 2: in-degree 1, no shortcut
        assert_eq!(state.importance(2), -2);
    }
}
