use std::time::Instant;

use super::ContractionHierarchy;
use crate::dijkstra::Direction;
use crate::graph::{Distance, VertexId, INFINITY};
use crate::heap::IndexedHeap;
use crate::stats::QueryStats;

struct Side {
    dist: Vec<Distance>,
    stamp: Vec<u32>,
    heap: IndexedHeap<Distance>,
}

impl Side {
    fn new(n: usize) -> Self {
        Side {
            dist: vec![INFINITY; n],
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

    fn min_key(&self) -> Distance {
        self.heap.peek().map_or(INFINITY, |(k, _)| k)
    }
}

/// Reusable CH query workspace.
pub struct ChQuery<'a> {
    ch: &'a ContractionHierarchy,
    sides: [Side; 2],
    generation: u32,
    trace: Option<Vec<(Direction, VertexId, Distance)>>,
}

impl<'a> ChQuery<'a> {
    pub fn new(ch: &'a ContractionHierarchy) -> Self {
        let n = ch.vertex_count();
        ChQuery {
            ch,
            sides: [Side::new(n), Side::new(n)],
            generation: 0,
            trace: None,
        }
    }

    pub fn hierarchy(&self) -> &'a ContractionHierarchy {
        self.ch
    }

    /// Records every settled vertex with its label for later inspection.
    pub fn enable_trace(&mut self, on: bool) {
        self.trace = on.then(Vec::new);
    }

    pub fn trace(&self) -> &[(Direction, VertexId, Distance)] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn distance(&mut self, s: VertexId, t: VertexId) -> Distance {
        self.query(s, t, true).0
    }

    pub fn query(&mut self, s: VertexId, t: VertexId, stall_on_demand: bool) -> (Distance, QueryStats) {
        let start = Instant::now();
        let mut stats = QueryStats::default();
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            for side in &mut self.sides {
                side.stamp.iter_mut().for_each(|x| *x = 0);
            }
            self.generation = 1;
        }
        let generation = self.generation;
        if let Some(trace) = &mut self.trace {
            trace.clear();
        }
        for (side, root) in self.sides.iter_mut().zip([s, t]) {
            side.heap.clear();
            side.stamp[root as usize] = generation;
            side.dist[root as usize] = 0;
            side.heap.push_or_decrease(root, 0);
        }
        let mut best = INFINITY;
        if s == t {
            best = 0;
            stats.settled = 1;
            if let Some(trace) = &mut self.trace {
                trace.push((Direction::Forward, s, 0));
            }
        }
        let mut current = 0;
        loop {
            let mins = [self.sides[0].min_key(), self.sides[1].min_key()];
            if mins[0] >= best && mins[1] >= best {
                break;
            }
            if mins[current] >= best {
                current = 1 - current;
            }
            let (mine, other) = split(&mut self.sides, current);
            let (d, u) = mine.heap.pop().expect("non-empty heap");
            stats.settled += 1;
            let dir = if current == 0 {
                Direction::Forward
            } else {
                Direction::Backward
            };
            if let Some(trace) = &mut self.trace {
                trace.push((dir, u, d));
            }
            let od = other.dist(u, generation);
            if od != INFINITY && d + od < best {
                best = d + od;
            }
            let (relax, check) = match dir {
                Direction::Forward => (self.ch.up_edges(u), self.ch.down_edges(u)),
                Direction::Backward => (self.ch.down_edges(u), self.ch.up_edges(u)),
            };
            let far = |e: &super::ChEdge| match dir {
                Direction::Forward => e.head,
                Direction::Backward => e.tail,
            };
            let near = |e: &super::ChEdge| match dir {
                Direction::Forward => e.tail,
                Direction::Backward => e.head,
            };
            if stall_on_demand {
                let mut stalled = false;
                for e in check {
                    stats.stall_checks += 1;
                    let xd = mine.dist(near(e), generation);
                    if xd != INFINITY && xd + e.weight < d {
                        stalled = true;
                        break;
                    }
                }
                if stalled {
                    stats.stalled += 1;
                    current = 1 - current;
                    continue;
                }
            }
            for e in relax {
                stats.relaxed += 1;
                let v = far(e);
                let nd = d + e.weight;
                if nd < mine.dist(v, generation) {
                    mine.stamp[v as usize] = generation;
                    mine.dist[v as usize] = nd;
                    mine.heap.push_or_decrease(v, nd);
                    let od = other.dist(v, generation);
                    if od != INFINITY && nd + od < best {
                        best = nd + od;
                    }
                }
            }
            current = 1 - current;
        }
        stats.elapsed = start.elapsed();
        (best, stats)
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
pub fn ch_query(ch: &ContractionHierarchy, s: VertexId, t: VertexId, stall_on_demand: bool) -> (Distance, QueryStats) {
    ChQuery::new(ch).query(s, t, stall_on_demand)
}
