//! Edge hierarchy construction.
//!
//! Edges are ranked one at a time. Ranking `(u, v)` inspects every pair of
//! unranked edges `(u', u)`, `(v, v')` whose concatenation `u' u v v'` is a
//! shortest path in the complete current graph and makes sure that pair
//! stays bridged by an unranked edge: either an existing `(u', v)` or
//! `(u, v')` is lowered and unranked again, or a new shortcut is inserted.
//! New shortcuts are chosen by a minimum vertex cover over the candidate
//! pairs, so each ranking step inserts as few edges as possible.
//!
//! Edges are ranked in rounds. At the start of a round the number of
//! shortcuts each unranked edge would cause is simulated, and every edge
//! whose count is a local minimum among its incident unranked edges is
//! fixed for the round.

use std::time::{Duration, Instant};

use super::hierarchy::{EdgeHierarchy, EhEdge};
use super::{Rank, UNRANKED};
use crate::ch::{build_contraction_hierarchy, ChQuery, ContractionHierarchy};
use crate::dijkstra::BidirectionalDijkstra;
use crate::graph::{Adjacency, Distance, EdgeId, Graph, VertexId};
use crate::matching::{BipartiteCoverInstance, VertexCover};
use crate::reorder::dfs_preorder;

pub const NO_VIA: VertexId = VertexId::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OracleKind {
    /// Queries on a contraction hierarchy of the input graph.
    #[default]
    Ch,
    /// Bidirectional Dijkstra on the complete working graph.
    Dijkstra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: Distance,
    pub rank: Rank,
    pub via: VertexId,
}

impl WorkEdge {
    pub fn is_ranked(&self) -> bool {
        self.rank != UNRANKED
    }
}

/// Mutable graph holding original edges and shortcuts.
#[derive(Debug, Clone)]
pub struct WorkingGraph {
    edges: Vec<WorkEdge>,
    out: Vec<Vec<EdgeId>>,
    inc: Vec<Vec<EdgeId>>,
}

impl WorkingGraph {
    pub fn from_graph(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let mut g = WorkingGraph {
            edges: Vec::with_capacity(graph.edge_count() * 2),
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
        };
        for e in graph.edges() {
            g.push(e.tail, e.head, e.weight as Distance, NO_VIA);
        }
        g
    }

    fn push(&mut self, tail: VertexId, head: VertexId, weight: Distance, via: VertexId) -> EdgeId {
        let id = self.edges.len() as EdgeId;
        self.edges.push(WorkEdge {
            tail,
            head,
            weight,
            rank: UNRANKED,
            via,
        });
        self.out[tail as usize].push(id);
        self.inc[head as usize].push(id);
        id
    }

    pub fn edge(&self, id: EdgeId) -> &WorkEdge {
        &self.edges[id as usize]
    }

    pub fn edges(&self) -> &[WorkEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v as usize]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.inc[v as usize]
    }

    pub fn find_edge(&self, tail: VertexId, head: VertexId) -> Option<EdgeId> {
        self.out[tail as usize]
            .iter()
            .copied()
            .find(|&e| self.edges[e as usize].head == head)
    }

    /// Snapshot as a plain graph (ranks and vias dropped).
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(
            self.out.len(),
            self.edges
                .iter()
                .map(|e| crate::graph::Edge::new(e.tail, e.head, u32::try_from(e.weight).unwrap_or(u32::MAX))),
        )
        .expect("working graph ids are in range")
    }
}

impl Adjacency for WorkingGraph {
    fn vertex_count(&self) -> usize {
        self.out.len()
    }

    fn for_each_out<F: FnMut(VertexId, Distance)>(&self, v: VertexId, mut f: F) {
        for &e in &self.out[v as usize] {
            let e = &self.edges[e as usize];
            f(e.head, e.weight);
        }
    }

    fn for_each_in<F: FnMut(VertexId, Distance)>(&self, v: VertexId, mut f: F) {
        for &e in &self.inc[v as usize] {
            let e = &self.edges[e as usize];
            f(e.tail, e.weight);
        }
    }
}

/// Exact distance oracle over the complete graph. Distances never change
/// during construction, so a hierarchy of the input graph stays valid.
pub enum DistanceOracle<'a> {
    Ch(ChQuery<'a>),
    Dijkstra(BidirectionalDijkstra),
}

impl<'a> DistanceOracle<'a> {
    pub fn ch(ch: &'a ContractionHierarchy) -> Self {
        DistanceOracle::Ch(ChQuery::new(ch))
    }

    pub fn dijkstra(vertex_count: usize) -> Self {
        DistanceOracle::Dijkstra(BidirectionalDijkstra::new(vertex_count))
    }

    pub fn distance(&mut self, graph: &WorkingGraph, s: VertexId, t: VertexId) -> Distance {
        match self {
            DistanceOracle::Ch(q) => q.distance(s, t),
            DistanceOracle::Dijkstra(bd) => bd.distance(graph, s, t),
        }
    }
}

/// Existing edge that takes over a candidate pair instead of a new shortcut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reuse {
    pub edge: EdgeId,
    pub weight: Distance,
    pub via: VertexId,
}

/// Candidate shortcuts discovered while ranking one edge `(u, v)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShortcutCandidates {
    pub edge: EdgeId,
    /// Left side: in-neighbors `u'` with `w(u', u)`.
    pub left: Vec<(VertexId, Distance)>,
    /// Right side: out-neighbors `v'` with `w(v, v')`.
    pub right: Vec<(VertexId, Distance)>,
    pub instance: BipartiteCoverInstance,
    pub reuse: Vec<Reuse>,
}

/// Edges touched by one ranking step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MutationLog {
    pub inserted: Vec<EdgeId>,
    pub reused: Vec<EdgeId>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("vertex cover leaves candidate pair ({left}, {right}) uncovered")]
    UncoveredPair { left: VertexId, right: VertexId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundLog {
    pub round: usize,
    pub selected: usize,
    pub inserted: usize,
    pub reused: usize,
    pub unranked_after: usize,
    pub simulated: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy)]
struct CachedCount {
    clock: u64,
    count: u32,
}

pub struct ConstructionState<'a> {
    graph: WorkingGraph,
    next_rank: Rank,
    unranked: usize,
    oracle: DistanceOracle<'a>,
    /// Logical time of the last change around every vertex.
    touched: Vec<u64>,
    clock: u64,
    counts: Vec<Option<CachedCount>>,
    permutation: Vec<VertexId>,
    rounds: Vec<RoundLog>,
    simulated_in_round: usize,
}

impl<'a> ConstructionState<'a> {
    pub fn new(graph: &Graph, oracle: DistanceOracle<'a>) -> Self {
        ConstructionState {
            graph: WorkingGraph::from_graph(graph),
            next_rank: 0,
            unranked: graph.edge_count(),
            oracle,
            touched: vec![0; graph.vertex_count()],
            clock: 1,
            counts: vec![None; graph.edge_count()],
            permutation: dfs_preorder(graph),
            rounds: Vec::new(),
            simulated_in_round: 0,
        }
    }

    pub fn graph(&self) -> &WorkingGraph {
        &self.graph
    }

    pub fn unranked_count(&self) -> usize {
        self.unranked
    }

    pub fn rounds(&self) -> &[RoundLog] {
        &self.rounds
    }

    pub fn unranked_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.graph
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_ranked())
            .map(|(i, _)| i as EdgeId)
    }

    fn touch(&mut self, v: VertexId) {
        self.touched[v as usize] = self.clock;
    }

    fn tick(&mut self) {
        self.clock += 1;
    }

    /// Pairs of unranked edges around `edge` whose concatenation with it is
    /// a shortest path, split into reusable existing edges and a cover
    /// instance for the rest.
    pub fn collect_shortcut_candidates(&mut self, edge: EdgeId) -> ShortcutCandidates {
        let WorkEdge {
            tail: u,
            head: v,
            weight: w,
            ..
        } = self.graph.edges[edge as usize];
        let mut out = ShortcutCandidates {
            edge,
            ..ShortcutCandidates::default()
        };
        let graph = &self.graph;
        let ins: Vec<(VertexId, Distance)> = graph.inc[u as usize]
            .iter()
            .map(|&e| &graph.edges[e as usize])
            .filter(|e| !e.is_ranked() && e.tail != v)
            .map(|e| (e.tail, e.weight))
            .collect();
        if ins.is_empty() {
            return out;
        }
        let outs: Vec<(VertexId, Distance)> = graph.out[v as usize]
            .iter()
            .map(|&e| &graph.edges[e as usize])
            .filter(|e| !e.is_ranked() && e.head != u)
            .map(|e| (e.head, e.weight))
            .collect();
        if outs.is_empty() {
            return out;
        }
        let mut left_index: Vec<Option<u32>> = vec![None; ins.len()];
        let mut right_index: Vec<Option<u32>> = vec![None; outs.len()];
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        // edges leaving u, for rejecting detours without asking the oracle
        let via_v_edges: Vec<Option<EdgeId>> = outs.iter().map(|&(v_prime, _)| graph.find_edge(u, v_prime)).collect();
        for (i, &(u_prime, w_in)) in ins.iter().enumerate() {
            let via_u = self.graph.find_edge(u_prime, v);
            if via_u.is_some_and(|a| (self.graph.edges[a as usize].weight) < w_in + w) {
                continue;
            }
            for (j, &(v_prime, w_out)) in outs.iter().enumerate() {
                if v_prime == u_prime {
                    continue;
                }
                let via_v = via_v_edges[j];
                if via_v.is_some_and(|b| self.graph.edges[b as usize].weight < w + w_out) {
                    continue;
                }
                let sum = w_in + w + w_out;
                if self
                    .graph
                    .find_edge(u_prime, v_prime)
                    .is_some_and(|d| self.graph.edges[d as usize].weight < sum)
                {
                    continue;
                }
                if self.oracle.distance(&self.graph, u_prime, v_prime) != sum {
                    continue;
                }
                let reuse = match (via_u, via_v) {
                    (Some(a), Some(b)) => {
                        // an unranked edge avoids re-ranking work later
                        if self.graph.edges[a as usize].is_ranked() && !self.graph.edges[b as usize].is_ranked() {
                            Some(Reuse {
                                edge: b,
                                weight: w + w_out,
                                via: v,
                            })
                        } else {
                            Some(Reuse {
                                edge: a,
                                weight: w_in + w,
                                via: u,
                            })
                        }
                    }
                    (Some(a), None) => Some(Reuse {
                        edge: a,
                        weight: w_in + w,
                        via: u,
                    }),
                    (None, Some(b)) => Some(Reuse {
                        edge: b,
                        weight: w + w_out,
                        via: v,
                    }),
                    (None, None) => None,
                };
                match reuse {
                    Some(r) => {
                        if !out.reuse.contains(&r) {
                            out.reuse.push(r);
                        }
                    }
                    None => {
                        let l = *left_index[i].get_or_insert_with(|| {
                            out.left.push((u_prime, w_in));
                            out.left.len() as u32 - 1
                        });
                        let r = *right_index[j].get_or_insert_with(|| {
                            out.right.push((v_prime, w_out));
                            out.right.len() as u32 - 1
                        });
                        pairs.push((l, r));
                    }
                }
            }
        }
        out.instance = BipartiteCoverInstance::new(out.left.len(), out.right.len());
        for (l, r) in pairs {
            out.instance.add_edge(l, r);
        }
        out
    }

    /// Number of new shortcuts ranking `edge` now would insert. Leaves the
    /// state unchanged.
    pub fn count_shortcuts_for_edge(&mut self, edge: EdgeId) -> usize {
        debug_assert!(!self.graph.edge(edge).is_ranked());
        let candidates = self.collect_shortcut_candidates(edge);
        candidates.instance.min_vertex_cover().len()
    }

    fn cached_count(&mut self, edge: EdgeId) -> u32 {
        let e = self.graph.edges[edge as usize];
        let fresh_after = self.touched[e.tail as usize].max(self.touched[e.head as usize]);
        if let Some(c) = self.counts[edge as usize] {
            if c.clock > fresh_after {
                return c.count;
            }
        }
        self.simulated_in_round += 1;
        let count = self.count_shortcuts_for_edge(edge) as u32;
        self.counts[edge as usize] = Some(CachedCount {
            clock: self.clock,
            count,
        });
        count
    }

    /// Every unranked edge whose simulated shortcut count is at most that of
    /// each unranked edge sharing an endpoint with it, in ascending id order.
    pub fn select_round_edges(&mut self) -> Vec<EdgeId> {
        // counts are stamped with a clock strictly after every touch so far
        self.tick();
        let unranked: Vec<EdgeId> = self.unranked_edges().collect();
        let mut count = vec![u32::MAX; self.graph.edge_count()];
        for &e in &unranked {
            count[e as usize] = self.cached_count(e);
        }
        let n = self.graph.out.len();
        let mut vertex_min = vec![u32::MAX; n];
        for &e in &unranked {
            let WorkEdge { tail, head, .. } = self.graph.edges[e as usize];
            let c = count[e as usize];
            vertex_min[tail as usize] = vertex_min[tail as usize].min(c);
            vertex_min[head as usize] = vertex_min[head as usize].min(c);
        }
        unranked
            .into_iter()
            .filter(|&e| {
                let WorkEdge { tail, head, .. } = self.graph.edges[e as usize];
                let c = count[e as usize];
                c <= vertex_min[tail as usize] && c <= vertex_min[head as usize]
            })
            .collect()
    }

    /// Inserts the shortcuts chosen by `cover` and applies the reuse records.
    pub fn apply_shortcuts(
        &mut self,
        candidates: &ShortcutCandidates,
        cover: &VertexCover,
    ) -> Result<MutationLog, ConstructionError> {
        if !candidates.instance.is_cover(cover) {
            let (l, r) = candidates
                .instance
                .edges()
                .find(|&(l, r)| !cover.left.contains(&l) && !cover.right.contains(&r))
                .expect("some pair is uncovered");
            return Err(ConstructionError::UncoveredPair {
                left: candidates.left[l as usize].0,
                right: candidates.right[r as usize].0,
            });
        }
        let WorkEdge {
            tail: u,
            head: v,
            weight: w,
            ..
        } = self.graph.edges[candidates.edge as usize];
        self.tick();
        let mut log = MutationLog::default();
        for &l in &cover.left {
            let (u_prime, w_in) = candidates.left[l as usize];
            debug_assert!(self.graph.find_edge(u_prime, v).is_none());
            log.inserted.push(self.graph.push(u_prime, v, w_in + w, u));
            self.touch(u_prime);
            self.touch(v);
        }
        for &r in &cover.right {
            let (v_prime, w_out) = candidates.right[r as usize];
            debug_assert!(self.graph.find_edge(u, v_prime).is_none());
            log.inserted.push(self.graph.push(u, v_prime, w + w_out, v));
            self.touch(u);
            self.touch(v_prime);
        }
        self.unranked += log.inserted.len();
        self.counts.resize(self.graph.edge_count(), None);
        for r in &candidates.reuse {
            let e = &mut self.graph.edges[r.edge as usize];
            // ties keep the old witness so via chains stay acyclic
            if r.weight < e.weight {
                e.weight = r.weight;
                e.via = r.via;
            }
            if e.is_ranked() {
                e.rank = UNRANKED;
                self.unranked += 1;
            }
            let (a, b) = (e.tail, e.head);
            self.touch(a);
            self.touch(b);
            log.reused.push(r.edge);
        }
        Ok(log)
    }

    /// Assigns the next rank to `edge` and keeps every shortest path through
    /// it bridged by an unranked edge.
    pub fn rank_edge(&mut self, edge: EdgeId) -> Result<MutationLog, ConstructionError> {
        let e = &mut self.graph.edges[edge as usize];
        debug_assert!(!e.is_ranked());
        e.rank = self.next_rank;
        self.next_rank += 1;
        self.unranked -= 1;
        let (u, v) = (e.tail, e.head);
        self.tick();
        self.touch(u);
        self.touch(v);
        let candidates = self.collect_shortcut_candidates(edge);
        let cover = candidates.instance.min_vertex_cover();
        self.apply_shortcuts(&candidates, &cover)
    }

    /// Runs one round. Returns `None` when no unranked edge remains.
    pub fn run_round(&mut self) -> Result<Option<&RoundLog>, ConstructionError> {
        if self.unranked == 0 {
            return Ok(None);
        }
        let start = Instant::now();
        self.simulated_in_round = 0;
        let selected = self.select_round_edges();
        let simulated = self.simulated_in_round;
        let mut inserted = 0;
        let mut reused = 0;
        for &e in &selected {
            if self.graph.edges[e as usize].is_ranked() {
                continue;
            }
            let log = self.rank_edge(e)?;
            inserted += log.inserted.len();
            reused += log.reused.len();
        }
        self.rounds.push(RoundLog {
            round: self.rounds.len(),
            selected: selected.len(),
            inserted,
            reused,
            unranked_after: self.unranked,
            simulated,
            elapsed: start.elapsed(),
        });
        Ok(self.rounds.last())
    }

    pub fn run_to_completion(&mut self) -> Result<(), ConstructionError> {
        while self.run_round()?.is_some() {}
        Ok(())
    }

    /// Freezes the fully ranked graph into a query structure.
    pub fn finalize(self) -> EdgeHierarchy {
        assert_eq!(self.unranked, 0, "finalize requires every edge to be ranked");
        let perm = &self.permutation;
        let map = |v: VertexId| {
            if v == NO_VIA {
                NO_VIA
            } else {
                perm[v as usize]
            }
        };
        let edges = self
            .graph
            .edges
            .iter()
            .map(|e| EhEdge {
                tail: map(e.tail),
                head: map(e.head),
                weight: e.weight,
                rank: e.rank,
                via: map(e.via),
            })
            .collect();
        EdgeHierarchy::from_edges(self.permutation.clone(), edges)
    }
}

/// Progress callback arguments: the round just finished.
pub type RoundObserver<'o> = &'o mut dyn FnMut(&RoundLog);

pub fn build_edge_hierarchy(graph: &Graph, oracle: OracleKind) -> EdgeHierarchy {
    build_edge_hierarchy_observed(graph, oracle, &mut |_| {})
}

pub fn build_edge_hierarchy_observed(graph: &Graph, oracle: OracleKind, observer: RoundObserver<'_>) -> EdgeHierarchy {
    let ch;
    let oracle = match oracle {
        OracleKind::Ch => {
            ch = build_contraction_hierarchy(graph);
            DistanceOracle::ch(&ch)
        }
        OracleKind::Dijkstra => DistanceOracle::dijkstra(graph.vertex_count()),
    };
    let mut state = ConstructionState::new(graph, oracle);
    loop {
        match state.run_round() {
            Ok(Some(log)) => observer(log),
            Ok(None) => break,
            // the cover comes from min_vertex_cover, which always covers
            Err(e) => panic!("edge hierarchy construction invariant violated: {e}"),
        }
    }
    state.finalize()
}
