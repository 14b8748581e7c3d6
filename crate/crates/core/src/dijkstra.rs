//! Plain and bidirectional Dijkstra, used as ground truth and for Dijkstra
//! rank computation.

use crate::graph::{Adjacency, Distance, VertexId, INFINITY};
use crate::heap::IndexedHeap;

const NO_VERTEX: VertexId = VertexId::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reverse(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// Result of a full one-to-all search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceArray {
    pub dist: Vec<Distance>,
    /// Predecessor on the search tree (successor for a backward search).
    pub parent: Vec<VertexId>,
    /// Vertices in the order they were settled; the source comes first.
    pub settle_order: Vec<VertexId>,
}

impl DistanceArray {
    pub fn distance(&self, v: VertexId) -> Distance {
        self.dist[v as usize]
    }

    pub fn parent_of(&self, v: VertexId) -> Option<VertexId> {
        let p = self.parent[v as usize];
        (p != NO_VERTEX).then_some(p)
    }

    /// Tree path from the search root to `v` (reversed for backward trees).
    pub fn path_to(&self, v: VertexId) -> Vec<VertexId> {
        if self.dist[v as usize] == INFINITY {
            return Vec::new();
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent_of(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

/// Generation-stamped labels so repeated searches skip reinitialization.
#[derive(Debug, Clone)]
struct Labels {
    dist: Vec<Distance>,
    parent: Vec<VertexId>,
    stamp: Vec<u32>,
    generation: u32,
}

impl Labels {
    fn new(n: usize) -> Self {
        Labels {
            dist: vec![INFINITY; n],
            parent: vec![NO_VERTEX; n],
            stamp: vec![0; n],
            generation: 0,
        }
    }

    fn reset(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
    }

    fn dist(&self, v: VertexId) -> Distance {
        if self.stamp[v as usize] == self.generation {
            self.dist[v as usize]
        } else {
            INFINITY
        }
    }

    fn set(&mut self, v: VertexId, d: Distance, parent: VertexId) {
        let i = v as usize;
        self.stamp[i] = self.generation;
        self.dist[i] = d;
        self.parent[i] = parent;
    }
}

fn neighbors<G: Adjacency, F: FnMut(VertexId, Distance)>(g: &G, v: VertexId, dir: Direction, f: F) {
    match dir {
        Direction::Forward => g.for_each_out(v, f),
        Direction::Backward => g.for_each_in(v, f),
    }
}

/// Reusable one-to-all Dijkstra workspace.
#[derive(Debug, Clone)]
pub struct Dijkstra {
    labels: Labels,
    heap: IndexedHeap<Distance>,
}

impl Dijkstra {
    pub fn new(vertex_count: usize) -> Self {
        Dijkstra {
            labels: Labels::new(vertex_count),
            heap: IndexedHeap::new(vertex_count),
        }
    }

    /// Full search from `source`. `on_settle` is called with each settled
    /// vertex and its distance; returning `false` stops the search.
    pub fn run_with<G: Adjacency>(
        &mut self,
        g: &G,
        source: VertexId,
        dir: Direction,
        mut on_settle: impl FnMut(VertexId, Distance) -> bool,
    ) {
        self.labels.reset();
        self.heap.clear();
        self.labels.set(source, 0, NO_VERTEX);
        self.heap.push_or_decrease(source, 0);
        while let Some((d, u)) = self.heap.pop() {
            if !on_settle(u, d) {
                break;
            }
            let labels = &mut self.labels;
            let heap = &mut self.heap;
            neighbors(g, u, dir, |v, w| {
                let nd = d + w;
                if nd < labels.dist(v) {
                    labels.set(v, nd, u);
                    heap.push_or_decrease(v, nd);
                }
            });
        }
    }

    pub fn run<G: Adjacency>(&mut self, g: &G, source: VertexId, dir: Direction) -> DistanceArray {
        let n = g.vertex_count();
        let mut settle_order = Vec::new();
        self.run_with(g, source, dir, |v, _| {
            settle_order.push(v);
            true
        });
        let mut dist = vec![INFINITY; n];
        let mut parent = vec![NO_VERTEX; n];
        for v in 0..n as VertexId {
            if self.labels.stamp[v as usize] == self.labels.generation {
                dist[v as usize] = self.labels.dist[v as usize];
                parent[v as usize] = self.labels.parent[v as usize];
            }
        }
        DistanceArray {
            dist,
            parent,
            settle_order,
        }
    }
}

/// Distances from `source` to every vertex.
pub fn dijkstra<G: Adjacency>(g: &G, source: VertexId) -> DistanceArray {
    Dijkstra::new(g.vertex_count()).run(g, source, Direction::Forward)
}

/// Distances from every vertex to `target`.
pub fn dijkstra_to<G: Adjacency>(g: &G, target: VertexId) -> DistanceArray {
    Dijkstra::new(g.vertex_count()).run(g, target, Direction::Backward)
}

/// Reusable bidirectional Dijkstra workspace.
#[derive(Debug, Clone)]
pub struct BidirectionalDijkstra {
    labels: [Labels; 2],
    heaps: [IndexedHeap<Distance>; 2],
}

impl BidirectionalDijkstra {
    pub fn new(vertex_count: usize) -> Self {
        BidirectionalDijkstra {
            labels: [Labels::new(vertex_count), Labels::new(vertex_count)],
            heaps: [IndexedHeap::new(vertex_count), IndexedHeap::new(vertex_count)],
        }
    }

    pub fn distance<G: Adjacency>(&mut self, g: &G, s: VertexId, t: VertexId) -> Distance {
        self.search(g, s, t).0
    }

    /// Distance and a witness vertex sequence from `s` to `t`.
    pub fn query<G: Adjacency>(&mut self, g: &G, s: VertexId, t: VertexId) -> (Distance, Vec<VertexId>) {
        let (best, meet) = self.search(g, s, t);
        if best == INFINITY {
            return (INFINITY, Vec::new());
        }
        let mut path = Vec::new();
        let mut cur = meet;
        loop {
            path.push(cur);
            let p = self.labels[0].parent[cur as usize];
            if p == NO_VERTEX {
                break;
            }
            cur = p;
        }
        path.reverse();
        let mut cur = meet;
        loop {
            let p = self.labels[1].parent[cur as usize];
            if p == NO_VERTEX {
                break;
            }
            path.push(p);
            cur = p;
        }
        (best, path)
    }

    fn search<G: Adjacency>(&mut self, g: &G, s: VertexId, t: VertexId) -> (Distance, VertexId) {
        for side in 0..2 {
            self.labels[side].reset();
            self.heaps[side].clear();
        }
        self.labels[0].set(s, 0, NO_VERTEX);
        self.labels[1].set(t, 0, NO_VERTEX);
        self.heaps[0].push_or_decrease(s, 0);
        self.heaps[1].push_or_decrease(t, 0);
        let mut best = if s == t { 0 } else { INFINITY };
        let mut meet = s;
        let mut side = 0;
        loop {
            let min = |h: &IndexedHeap<Distance>| h.peek().map_or(INFINITY, |(k, _)| k);
            let mins = [min(&self.heaps[0]), min(&self.heaps[1])];
            if mins[0] >= best && mins[1] >= best {
                break;
            }
            if mins[side] >= best {
                side = 1 - side;
            }
            let (d, u) = self.heaps[side].pop().expect("non-empty heap");
            let dir = if side == 0 {
                Direction::Forward
            } else {
                Direction::Backward
            };
            let (mine, other) = {
                let (a, b) = self.labels.split_at_mut(1);
                if side == 0 {
                    (&mut a[0], &b[0])
                } else {
                    (&mut b[0], &a[0])
                }
            };
            let heap = &mut self.heaps[side];
            neighbors(g, u, dir, |v, w| {
                let nd = d + w;
                if nd < mine.dist(v) {
                    mine.set(v, nd, u);
                    heap.push_or_decrease(v, nd);
                    let od = other.dist(v);
                    if od != INFINITY && nd + od < best {
                        best = nd + od;
                        meet = v;
                    }
                }
            });
            side = 1 - side;
        }
        (best, meet)
    }
}

/// Convenience wrapper allocating a fresh workspace.
pub fn bidirectional_dijkstra<G: Adjacency>(g: &G, s: VertexId, t: VertexId) -> (Distance, Vec<VertexId>) {
    BidirectionalDijkstra::new(g.vertex_count()).query(g, s, t)
}

/// The `i`-th vertex settled by a plain Dijkstra from a source, for each
/// requested rank `i` (1-based; the source has rank 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTargets {
    pub targets: Vec<(usize, VertexId)>,
    /// Distance from the source to each target, parallel to `targets`.
    pub distances: Vec<Distance>,
    /// Requested ranks beyond the number of reachable vertices, skipped.
    pub skipped: Vec<usize>,
}

pub fn dijkstra_rank_targets<G: Adjacency>(g: &G, source: VertexId, ranks: &[usize]) -> RankTargets {
    let mut search = Dijkstra::new(g.vertex_count());
    dijkstra_rank_targets_with(&mut search, g, source, ranks)
}

pub fn dijkstra_rank_targets_with<G: Adjacency>(
    search: &mut Dijkstra,
    g: &G,
    source: VertexId,
    ranks: &[usize],
) -> RankTargets {
    let mut wanted: Vec<usize> = ranks.iter().copied().filter(|&r| r >= 1).collect();
    wanted.sort_unstable();
    wanted.dedup();
    let max_rank = wanted.last().copied().unwrap_or(0);
    let mut targets = Vec::with_capacity(wanted.len());
    let mut distances = Vec::with_capacity(wanted.len());
    let mut next = 0;
    let mut settled = 0usize;
    if max_rank > 0 {
        search.run_with(g, source, Direction::Forward, |v, d| {
            settled += 1;
            while next < wanted.len() && wanted[next] == settled {
                targets.push((settled, v));
                distances.push(d);
                next += 1;
            }
            settled < max_rank
        });
    }
    let mut skipped: Vec<usize> = wanted[next..].to_vec();
    skipped.extend(ranks.iter().copied().filter(|&r| r == 0));
    RankTargets {
        targets,
        distances,
        skipped,
    }
}

/// Ranks `2^6, ..., 2^floor(log2 n)`.
pub fn dijkstra_rank_set(vertex_count: usize) -> Vec<usize> {
    if vertex_count < 64 {
        return Vec::new();
    }
    let max_exp = usize::BITS - 1 - vertex_count.leading_zeros();
    (6..=max_exp).map(|e| 1usize << e).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Graph};
    use crate::testutil::{floyd_warshall, random_graph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path(weights: &[u32]) -> Graph {
        Graph::from_edges(
            weights.len() + 1,
            weights
                .iter()
                .enumerate()
                .map(|(i, &w)| Edge::new(i as u32, i as u32 + 1, w)),
        )
        .unwrap()
    }

    #[test]
    fn path_distances() {
        let g = path(&[5, 7]);
        let d = dijkstra(&g, 0);
        assert_eq!(d.dist, vec![0, 5, 12]);
        assert_eq!(d.path_to(2), vec![0, 1, 2]);
        assert_eq!(d.settle_order, vec![0, 1, 2]);
        let back = dijkstra_to(&g, 2);
        assert_eq!(back.dist, vec![12, 7, 0]);
    }

    #[test]
    fn unreachable_is_infinite() {
        let g = path(&[5, 7]);
        let d = dijkstra(&g, 2);
        assert_eq!(d.dist, vec![INFINITY, INFINITY, 0]);
        assert!(d.path_to(0).is_empty());
        assert_eq!(bidirectional_dijkstra(&g, 2, 0), (INFINITY, vec![]));
    }

    #[test]
    fn bidirectional_trivial_cases() {
        let g = path(&[5, 7, 1]);
        assert_eq!(bidirectional_dijkstra(&g, 1, 1), (0, vec![1]));
        assert_eq!(bidirectional_dijkstra(&g, 0, 3), (13, vec![0, 1, 2, 3]));
    }

    #[test]
    fn matches_floyd_warshall() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for round in 0..200 {
            let g = random_graph(&mut rng, 2 + round % 63, 0.15, 100);
            let all = floyd_warshall(&g);
            let mut bidir = BidirectionalDijkstra::new(g.vertex_count());
            for s in 0..g.vertex_count() {
                let d = dijkstra(&g, s as u32);
                assert_eq!(d.dist, all[s]);
                // settled distances are non-decreasing
                let settled: Vec<_> = d.settle_order.iter().map(|&v| d.dist[v as usize]).collect();
                assert!(settled.windows(2).all(|w| w[0] <= w[1]));
                if round % 4 == 0 {
                    for t in 0..g.vertex_count() {
                        let (dist, p) = bidir.query(&g, s as u32, t as u32);
                        assert_eq!(dist, all[s][t]);
                        if dist != INFINITY {
                            let sum: u64 = p
                                .windows(2)
                                .map(|w| g.weight(g.find_edge(w[0], w[1]).unwrap()) as u64)
                                .sum();
                            assert_eq!(sum, dist);
                            assert_eq!((p[0], *p.last().unwrap()), (s as u32, t as u32));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank_targets_on_path() {
        let g = path(&[1, 1, 1]);
        let r = dijkstra_rank_targets(&g, 0, &[1, 4]);
        assert_eq!(r.targets, vec![(1, 0), (4, 3)]);
        let r = dijkstra_rank_targets(&g, 0, &[8]);
        assert!(r.targets.is_empty());
        assert_eq!(r.skipped, vec![8]);
    }

    #[test]
    fn rank_targets_follow_settle_log() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_graph(&mut rng, 60, 0.1, 20);
        let log = dijkstra(&g, 0).settle_order;
        let ranks: Vec<usize> = (1..=log.len()).collect();
        let r = dijkstra_rank_targets(&g, 0, &ranks);
        for (rank, v) in r.targets {
            assert_eq!(log[rank - 1], v);
        }
    }

    #[test]
    fn rank_set_powers() {
        assert!(dijkstra_rank_set(63).is_empty());
        assert_eq!(dijkstra_rank_set(64), vec![64]);
        assert_eq!(dijkstra_rank_set(321270).last(), Some(&(1 << 18)));
    }
}
