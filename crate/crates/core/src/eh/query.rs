use std::time::Instant;

use super::{EdgeHierarchy, Rank, StallPolicy};
use crate::dijkstra::Direction;
use crate::graph::{Distance, EdgeId, VertexId, INFINITY};
use crate::heap::IndexedHeap;
use crate::stats::QueryStats;

const NO_EDGE: EdgeId = EdgeId::MAX;

/// A settled vertex in external ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry {
    pub direction: Direction,
    pub vertex: VertexId,
    pub distance: Distance,
    pub stalled: bool,
}

/// One edge examined for relaxation. `stall_only` marks edges below the
/// rank label that only fed a stall label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelaxRecord {
    pub direction: Direction,
    pub edge: EdgeId,
    pub label_rank: Rank,
    pub stall_only: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult {
    pub distance: Distance,
    /// External id of the vertex where the best up and down paths meet.
    pub meeting: Option<VertexId>,
    /// Hierarchy edge ids of the up-down path, from source to target.
    pub path: Vec<EdgeId>,
    pub stats: QueryStats,
}

struct Side {
    dist: Vec<Distance>,
    rank: Vec<Rank>,
    stall: Vec<Distance>,
    parent: Vec<EdgeId>,
    settled: Vec<bool>,
    stamp: Vec<u32>,
    heap: IndexedHeap<(Distance, Rank)>,
}

impl Side {
    fn new(n: usize) -> Self {
        Side {
            dist: vec![INFINITY; n],
            rank: vec![0; n],
            stall: vec![INFINITY; n],
            parent: vec![NO_EDGE; n],
            settled: vec![false; n],
            stamp: vec![0; n],
            heap: IndexedHeap::new(n),
        }
    }

    fn dist(&self, v: VertexId, generation: u32) -> Distance {
        if self.stamp[v as usize] == generation {
            self.dist[v as usize]
        } else {
            INFINITY
        }
    }

    fn visit(&mut self, v: VertexId, generation: u32) {
        let i = v as usize;
        if self.stamp[i] != generation {
            self.stamp[i] = generation;
            self.dist[i] = INFINITY;
            self.rank[i] = Rank::MAX;
            self.stall[i] = INFINITY;
            self.parent[i] = NO_EDGE;
            self.settled[i] = false;
        }
    }

    fn min_dist(&self) -> Distance {
        self.heap.peek().map_or(INFINITY, |((d, _), _)| d)
    }
}

/// Reusable edge hierarchy query workspace.
pub struct EhQuery<'a> {
    eh: &'a EdgeHierarchy,
    sides: [Side; 2],
    generation: u32,
    trace: Option<Vec<TraceEntry>>,
    relax_log: Option<Vec<RelaxRecord>>,
}

impl<'a> EhQuery<'a> {
    pub fn new(eh: &'a EdgeHierarchy) -> Self {
        let n = eh.vertex_count();
        EhQuery {
            eh,
            sides: [Side::new(n), Side::new(n)],
            generation: 0,
            trace: None,
            relax_log: None,
        }
    }

    pub fn hierarchy(&self) -> &'a EdgeHierarchy {
        self.eh
    }

    pub fn enable_trace(&mut self, on: bool) {
        self.trace = on.then(Vec::new);
    }

    pub fn enable_relax_log(&mut self, on: bool) {
        self.relax_log = on.then(Vec::new);
    }

    /// Settled vertices of the last query.
    pub fn trace(&self) -> &[TraceEntry] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn relax_log(&self) -> &[RelaxRecord] {
        self.relax_log.as_deref().unwrap_or(&[])
    }

    pub fn distance(&mut self, s: VertexId, t: VertexId) -> Distance {
        self.query(s, t, StallPolicy::OnDemand).distance
    }

    /// Shortest path query between external vertex ids.
    pub fn query(&mut self, s: VertexId, t: VertexId, policy: StallPolicy) -> QueryResult {
        let start = Instant::now();
        let eh = self.eh;
        let mut stats = QueryStats::default();
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            for side in &mut self.sides {
                side.stamp.iter_mut().for_each(|x| *x = 0);
            }
            self.generation = 1;
        }
        let generation = self.generation;
        if let Some(t) = &mut self.trace {
            t.clear();
        }
        if let Some(l) = &mut self.relax_log {
            l.clear();
        }
        if s == t {
            stats.settled = 1;
            if let Some(trace) = &mut self.trace {
                trace.push(TraceEntry {
                    direction: Direction::Forward,
                    vertex: s,
                    distance: 0,
                    stalled: false,
                });
            }
            stats.elapsed = start.elapsed();
            return QueryResult {
                distance: 0,
                meeting: Some(s),
                path: Vec::new(),
                stats,
            };
        }
        let (si, ti) = (eh.to_internal(s), eh.to_internal(t));
        for (side, root) in self.sides.iter_mut().zip([si, ti]) {
            side.heap.clear();
            side.visit(root, generation);
            side.dist[root as usize] = 0;
            side.rank[root as usize] = 0;
            side.heap.push_or_decrease(root, (0, 0));
        }

        let mut best = INFINITY;
        let mut meeting = VertexId::MAX;
        let mut current = 0;
        loop {
            let mins = [self.sides[0].min_dist(), self.sides[1].min_dist()];
            if mins[0] >= best && mins[1] >= best {
                break;
            }
            if mins[current] >= best {
                current = 1 - current;
            }
            let dir = if current == 0 {
                Direction::Forward
            } else {
                Direction::Backward
            };
            let (mine, other) = split(&mut self.sides, current);
            let ((d, r), u) = mine.heap.pop().expect("non-empty heap");
            mine.settled[u as usize] = true;
            stats.settled += 1;

            let od = other.dist(u, generation);
            if od != INFINITY && d + od < best {
                best = d + od;
                meeting = u;
            }

            // edges that could give u a shorter label, highest rank first
            let check = match dir {
                Direction::Forward => EdgeList::Slice(eh.in_edges(u)),
                Direction::Backward => EdgeList::Range(eh.out_edges(u)),
            };
            let mut stalled = false;
            match policy {
                StallPolicy::OnDemand | StallPolicy::Partial(_) => {
                    let examined = policy.check_prefix(check.len());
                    for i in 0..examined {
                        let e = check.get(i);
                        stats.stall_checks += 1;
                        let edge = eh.edge(e);
                        let x = match dir {
                            Direction::Forward => edge.tail,
                            Direction::Backward => edge.head,
                        };
                        let xd = mine.dist(x, generation);
                        if xd != INFINITY && xd + edge.weight < d {
                            stalled = true;
                            break;
                        }
                    }
                }
                StallPolicy::InAdvance => {
                    stalled = mine.stall[u as usize] < d;
                }
                StallPolicy::None => {}
            }
            if let Some(trace) = &mut self.trace {
                trace.push(TraceEntry {
                    direction: dir,
                    vertex: eh.to_external(u),
                    distance: d,
                    stalled,
                });
            }
            if stalled {
                stats.stalled += 1;
                current = 1 - current;
                continue;
            }

            let relax = match dir {
                Direction::Forward => EdgeList::Range(eh.out_edges(u)),
                Direction::Backward => EdgeList::Slice(eh.in_edges(u)),
            };
            for i in 0..relax.len() {
                let e = relax.get(i);
                let edge = eh.edge(e);
                let feasible = edge.rank >= r;
                if !feasible && policy != StallPolicy::InAdvance {
                    // rank-descending order: the rest is infeasible too
                    break;
                }
                stats.relaxed += 1;
                if let Some(log) = &mut self.relax_log {
                    log.push(RelaxRecord {
                        direction: dir,
                        edge: e,
                        label_rank: r,
                        stall_only: !feasible,
                    });
                }
                let v = match dir {
                    Direction::Forward => edge.head,
                    Direction::Backward => edge.tail,
                };
                let nd = d + edge.weight;
                mine.visit(v, generation);
                let i = v as usize;
                if !feasible {
                    if nd < mine.stall[i] {
                        mine.stall[i] = nd;
                    }
                    continue;
                }
                let key = (nd, edge.rank);
                if key < (mine.dist[i], mine.rank[i]) {
                    debug_assert!(!mine.settled[i], "settled labels are final");
                    mine.dist[i] = nd;
                    mine.rank[i] = edge.rank;
                    mine.parent[i] = e;
                    mine.heap.push_or_decrease(v, key);
                    let od = other.dist(v, generation);
                    if od != INFINITY && nd + od < best {
                        best = nd + od;
                        meeting = v;
                    }
                }
            }
            current = 1 - current;
        }

        let mut path = Vec::new();
        if best != INFINITY {
            let mut up = Vec::new();
            let mut v = meeting;
            loop {
                let e = self.sides[0].parent[v as usize];
                if e == NO_EDGE || self.sides[0].stamp[v as usize] != generation {
                    break;
                }
                up.push(e);
                v = eh.edge(e).tail;
            }
            up.reverse();
            path = up;
            let mut v = meeting;
            loop {
                let e = self.sides[1].parent[v as usize];
                if e == NO_EDGE || self.sides[1].stamp[v as usize] != generation {
                    break;
                }
                path.push(e);
                v = eh.edge(e).head;
            }
        }
        stats.elapsed = start.elapsed();
        QueryResult {
            distance: best,
            meeting: (best != INFINITY).then(|| eh.to_external(meeting)),
            path,
            stats,
        }
    }
}

/// Edge ids of one adjacency, either a contiguous forward block or a
/// backward index slice.
#[derive(Clone)]
enum EdgeList<'x> {
    Range(std::ops::Range<EdgeId>),
    Slice(&'x [EdgeId]),
}

impl EdgeList<'_> {
    fn len(&self) -> usize {
        match self {
            EdgeList::Range(r) => r.len(),
            EdgeList::Slice(s) => s.len(),
        }
    }

    fn get(&self, i: usize) -> EdgeId {
        match self {
            EdgeList::Range(r) => r.start + i as EdgeId,
            EdgeList::Slice(s) => s[i],
        }
    }
}

fn split(sides: &mut [Side; 2], current: usize) -> (&mut Side, &Side) {
    let (a, b) = sides.split_at_mut(1);
    if current == 0 {
        (&mut a[0], &b[0])
    } else {
        (&mut b[0], &a[0])
    }
}

/// One-shot query with a fresh workspace.
pub fn eh_query(eh: &EdgeHierarchy, s: VertexId, t: VertexId, policy: StallPolicy) -> QueryResult {
    EhQuery::new(eh).query(s, t, policy)
}

/// Settled vertices whose label equals the true distance from the search
/// root, given exact forward distances from `s` and backward ones to `t`.
pub fn compute_min_vertices(
    trace: impl IntoIterator<Item = (Direction, VertexId, Distance)>,
    from_source: &[Distance],
    to_target: &[Distance],
) -> u64 {
    trace
        .into_iter()
        .filter(|&(dir, v, d)| match dir {
            Direction::Forward => from_source[v as usize] == d,
            Direction::Backward => to_target[v as usize] == d,
        })
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eh::{build_edge_hierarchy, unpack_path, EhEdge, OracleKind};
    use crate::graph::{Edge, Graph};
    use crate::testutil::{floyd_warshall, random_graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const POLICIES: [StallPolicy; 5] = [
        StallPolicy::None,
        StallPolicy::OnDemand,
        StallPolicy::InAdvance,
        StallPolicy::Partial(0.5),
        StallPolicy::Partial(1.0),
    ];

    fn original(tail: u32, head: u32, weight: u64, rank: u64) -> EhEdge {
        EhEdge {
            tail,
            head,
            weight,
            rank,
            via: VertexId::MAX,
        }
    }

    #[test]
    fn same_endpoint() {
        let g = Graph::from_edges(2, [Edge::new(0, 1, 3)]).unwrap();
        let eh = build_edge_hierarchy(&g, OracleKind::Dijkstra);
        let r = eh_query(&eh, 1, 1, StallPolicy::OnDemand);
        assert_eq!(r.distance, 0);
        assert!(r.path.is_empty());
        assert_eq!(r.stats.settled, 1);
    }

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, [Edge::new(0, 1, 3)]).unwrap();
        let eh = build_edge_hierarchy(&g, OracleKind::Dijkstra);
        for p in POLICIES {
            let r = eh_query(&eh, 0, 1, p);
            assert_eq!(r.distance, 3);
            assert_eq!(r.path.len(), 1);
            let r = eh_query(&eh, 1, 0, p);
            assert_eq!(r.distance, INFINITY);
            assert!(r.path.is_empty() && r.meeting.is_none());
        }
    }

    #[test]
    fn all_policies_match_floyd_warshall() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..60 {
            let n = rng.gen_range(2..=40);
            let p = [0.1, 0.3, 0.5][rng.gen_range(0..3)];
            let g = random_graph(&mut rng, n, p, 100);
            let all = floyd_warshall(&g);
            let eh = build_edge_hierarchy(&g, OracleKind::Ch);
            let mut q = EhQuery::new(&eh);
            for s in 0..n as u32 {
                for t in 0..n as u32 {
                    for policy in POLICIES {
                        let r = q.query(s, t, policy);
                        assert_eq!(r.distance, all[s as usize][t as usize], "{s}->{t} {policy}");
                    }
                }
            }
        }
    }

    #[test]
    fn paths_are_up_down_and_unpack_to_input_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(2..=30);
            let g = random_graph(&mut rng, n, 0.2, 50);
            let eh = build_edge_hierarchy(&g, OracleKind::Dijkstra);
            let mut q = EhQuery::new(&eh);
            for s in 0..n as u32 {
                for t in 0..n as u32 {
                    let r = q.query(s, t, StallPolicy::OnDemand);
                    if r.distance == INFINITY || s == t {
                        continue;
                    }
                    let ranks: Vec<Rank> = r.path.iter().map(|&e| eh.edge(e).rank).collect();
                    let apex = (0..ranks.len()).max_by_key(|&i| ranks[i]).unwrap();
                    assert!(ranks[..=apex].windows(2).all(|w| w[0] <= w[1]));
                    assert!(ranks[apex..].windows(2).all(|w| w[0] >= w[1]));
                    let packed: Distance = r.path.iter().map(|&e| eh.edge(e).weight).sum();
                    assert_eq!(packed, r.distance);
                    assert_eq!(eh.to_external(eh.edge(r.path[0]).tail), s);
                    assert_eq!(eh.to_external(eh.edge(*r.path.last().unwrap()).head), t);
                    let edges = unpack_path(&eh, &r.path).unwrap();
                    let sum: Distance = edges.iter().map(|e| e.weight as Distance).sum();
                    assert_eq!(sum, r.distance);
                    for e in &edges {
                        assert_eq!(g.find_edge(e.tail, e.head).map(|id| g.weight(id)), Some(e.weight));
                    }
                    assert!(edges.windows(2).all(|w| w[0].head == w[1].tail));
                }
            }
        }
    }

    #[test]
    fn relaxed_edges_respect_rank_labels() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = random_graph(&mut rng, 40, 0.15, 30);
        let eh = build_edge_hierarchy(&g, OracleKind::Ch);
        let mut q = EhQuery::new(&eh);
        q.enable_relax_log(true);
        for s in 0..40 {
            for t in 0..40 {
                for policy in POLICIES {
                    q.query(s, t, policy);
                    for rec in q.relax_log() {
                        let rank = eh.edge(rec.edge).rank;
                        assert_eq!(rank >= rec.label_rank, !rec.stall_only);
                        if policy != StallPolicy::InAdvance {
                            assert!(!rec.stall_only);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn in_advance_relaxes_each_edge_once_per_direction() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..10 {
            let g = random_graph(&mut rng, 30, 0.2, 20);
            let eh = build_edge_hierarchy(&g, OracleKind::Ch);
            let mut q = EhQuery::new(&eh);
            q.enable_relax_log(true);
            for s in 0..30 {
                for t in 0..30 {
                    let r = q.query(s, t, StallPolicy::InAdvance);
                    let mut seen = std::collections::HashSet::new();
                    for rec in q.relax_log() {
                        assert!(seen.insert((rec.direction == Direction::Forward, rec.edge)));
                    }
                    assert!(r.stats.relaxed <= 2 * eh.edge_count() as u64);
                }
            }
        }
    }

    #[test]
    fn partial_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let g = random_graph(&mut rng, 40, 0.15, 30);
        let eh = build_edge_hierarchy(&g, OracleKind::Ch);
        let mut q = EhQuery::new(&eh);
        q.enable_trace(true);
        let mut stalled_any = false;
        for s in 0..40 {
            for t in 0..40 {
                let on_demand = q.query(s, t, StallPolicy::OnDemand);
                let trace = q.trace().to_vec();
                let full = q.query(s, t, StallPolicy::Partial(1.0));
                assert_eq!(q.trace(), &trace[..]);
                assert_eq!(full.stats.counts(), on_demand.stats.counts());
                stalled_any |= on_demand.stats.stalled > 0;
                let zero = q.query(s, t, StallPolicy::Partial(0.0));
                let none = q.query(s, t, StallPolicy::None);
                assert_eq!(zero.stats.stalled, 0);
                assert_eq!(zero.stats.stall_checks, 0);
                assert_eq!(zero.stats.settled, none.stats.settled);
            }
        }
        assert!(stalled_any);
    }

    #[test]
    fn low_ranked_detour_stalls_in_advance() {
        // 0 -> 1 -> 2 costs 2 but (1, 2) is ranked below the label of 1;
        // 2 is first reached over (0, 2) with 5
        let eh = EdgeHierarchy::from_edges(
            vec![0, 1, 2, 3],
            vec![original(0, 1, 1, 5), original(1, 2, 1, 0), original(0, 2, 5, 6)],
        );
        let mut q = EhQuery::new(&eh);
        q.enable_trace(true);
        let r = q.query(0, 3, StallPolicy::InAdvance);
        assert_eq!(r.distance, INFINITY);
        assert_eq!(r.stats.stalled, 1);
        assert!(q.trace().iter().any(|e| e.vertex == 2 && e.stalled && e.distance == 5));
        for p in POLICIES {
            assert_eq!(q.query(0, 2, p).distance, 2);
        }
    }

    #[test]
    fn in_advance_without_low_edges_matches_none() {
        // ranks grow along the path, so no edge is ever below a label
        let eh = EdgeHierarchy::from_edges(
            vec![0, 1, 2, 3],
            vec![original(0, 1, 1, 0), original(1, 2, 1, 1), original(2, 3, 1, 2)],
        );
        let mut q = EhQuery::new(&eh);
        q.enable_trace(true);
        q.query(0, 3, StallPolicy::None);
        let plain = q.trace().to_vec();
        q.query(0, 3, StallPolicy::InAdvance);
        assert_eq!(q.trace(), &plain[..]);
    }

    #[test]
    fn min_vertices_bounded_by_settled() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let g = random_graph(&mut rng, 35, 0.15, 40);
        let eh = build_edge_hierarchy(&g, OracleKind::Ch);
        let mut q = EhQuery::new(&eh);
        q.enable_trace(true);
        for s in 0..35 {
            let fwd = crate::dijkstra::dijkstra(&g, s);
            for t in 0..35 {
                let bwd = crate::dijkstra::dijkstra_to(&g, t);
                let r = q.query(s, t, StallPolicy::None);
                let count = compute_min_vertices(
                    q.trace().iter().map(|e| (e.direction, e.vertex, e.distance)),
                    &fwd.dist,
                    &bwd.dist,
                );
                assert!(count <= r.stats.settled);
                if s == t {
                    assert_eq!(count, 1);
                }
            }
        }
        // a plain Dijkstra trace is exact everywhere
        let fwd = crate::dijkstra::dijkstra(&g, 0);
        let trace = fwd
            .settle_order
            .iter()
            .map(|&v| (Direction::Forward, v, fwd.dist[v as usize]));
        assert_eq!(
            compute_min_vertices(trace, &fwd.dist, &fwd.dist),
            fwd.settle_order.len() as u64
        );
    }
}
