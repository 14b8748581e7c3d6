//! Turn-cost expansion.
//!
//! Every vertex `v` is split into one copy per outgoing edge. The copy for
//! edge `(v, x)` is the state "at `v`, about to leave along `(v, x)`". An
//! original edge `(u, v)` becomes edges from the copy of `u` for `(u, v)` to
//! every copy of `v`, with the turn cost added to the weight. Vertices
//! without outgoing edges get a single sink copy so they stay reachable.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{FormatError, GraphError};
use crate::graph::{Edge, Graph, VertexId, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TurnCosts {
    /// Cost of turning from `(u, v)` onto `(v, u)`.
    pub uturn: Weight,
    /// Cost of every other turn.
    pub turn: Weight,
}

impl TurnCosts {
    pub fn cost(&self, from_tail: VertexId, to_head: VertexId) -> Weight {
        if from_tail == to_head {
            self.uturn
        } else {
            self.turn
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnExpansionMapping {
    /// Expanded vertex standing for each original edge, by original edge id.
    pub edge_state: Vec<VertexId>,
    /// Contiguous range `(first, count)` of out-edge copies per original vertex.
    pub vertex_copies: Vec<(VertexId, u32)>,
    /// Sink copy of vertices without outgoing edges.
    pub sink: Vec<Option<VertexId>>,
    pub expanded_vertex_count: usize,
}

impl TurnExpansionMapping {
    pub fn original_vertex_count(&self) -> usize {
        self.vertex_copies.len()
    }

    /// All expanded vertices representing original vertex `v`.
    pub fn copies(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let (first, count) = self.vertex_copies[v as usize];
        (first..first + count).chain(self.sink[v as usize])
    }

    /// Original vertex of every expanded vertex.
    pub fn owners(&self) -> Vec<VertexId> {
        let mut owner = vec![0; self.expanded_vertex_count];
        for v in 0..self.original_vertex_count() as VertexId {
            for c in self.copies(v) {
                owner[c as usize] = v;
            }
        }
        owner
    }

    pub fn to_text(&self, original: &Graph) -> String {
        let mut out = String::new();
        let n = self.original_vertex_count();
        let _ = writeln!(out, "c turn expansion mapping, 1-indexed ids");
        let _ = writeln!(out, "t {} {} {}", n, self.edge_state.len(), self.expanded_vertex_count);
        for v in 0..n {
            let (first, count) = self.vertex_copies[v];
            match self.sink[v] {
                Some(s) => {
                    let _ = writeln!(out, "v {} {} {} {}", v + 1, first + 1, count, s + 1);
                }
                None => {
                    let _ = writeln!(out, "v {} {} {} -", v + 1, first + 1, count);
                }
            }
        }
        for (id, &state) in self.edge_state.iter().enumerate() {
            let e = original.edge(id as u32);
            let _ = writeln!(out, "e {} {} {}", e.tail + 1, e.head + 1, state + 1);
        }
        out
    }

    /// Parses the text form written by [`TurnExpansionMapping::to_text`].
    pub fn parse<R: BufRead>(reader: R) -> Result<TurnExpansionMapping, FormatError> {
        let bad = |line: usize, what: &str| FormatError::Inconsistent(format!("line {line}: {what}"));
        let mut header: Option<(usize, usize, usize)> = None;
        let mut vertex_copies = Vec::new();
        let mut sink = Vec::new();
        let mut edge_state = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = i + 1;
            let fields: Vec<&str> = line.split_ascii_whitespace().collect();
            let num = |k: usize| -> Result<u64, FormatError> {
                fields
                    .get(k)
                    .and_then(|f| f.parse::<u64>().ok())
                    .ok_or_else(|| bad(line_no, "expected an integer field"))
            };
            match fields.first().copied() {
                None | Some("c") => {}
                Some("t") => {
                    if header.is_some() || fields.len() != 4 {
                        return Err(bad(line_no, "bad header"));
                    }
                    let (n, m, x) = (num(1)?, num(2)?, num(3)?);
                    if n > u32::MAX as u64 || m > u32::MAX as u64 || x > u32::MAX as u64 {
                        return Err(bad(line_no, "count exceeds 32-bit ids"));
                    }
                    header = Some((n as usize, m as usize, x as usize));
                }
                Some("v") => {
                    let (n, _, x) = header.ok_or_else(|| bad(line_no, "missing header"))?;
                    if fields.len() != 5 || num(1)? != vertex_copies.len() as u64 + 1 {
                        return Err(bad(line_no, "vertex lines must be complete and in order"));
                    }
                    if vertex_copies.len() >= n {
                        return Err(bad(line_no, "too many vertex lines"));
                    }
                    let first = num(2)?;
                    let count = num(3)?;
                    if first == 0 || (first - 1).checked_add(count).is_none_or(|end| end > x as u64) {
                        return Err(bad(line_no, "copy range outside expanded graph"));
                    }
                    vertex_copies.push(((first - 1) as VertexId, count as u32));
                    sink.push(match fields[4] {
                        "-" => None,
                        _ => {
                            let s = num(4)?;
                            if s == 0 || s > x as u64 {
                                return Err(bad(line_no, "sink outside expanded graph"));
                            }
                            Some((s - 1) as VertexId)
                        }
                    });
                }
                Some("e") => {
                    let (_, m, x) = header.ok_or_else(|| bad(line_no, "missing header"))?;
                    if fields.len() != 4 || edge_state.len() >= m {
                        return Err(bad(line_no, "bad edge line"));
                    }
                    let state = num(3)?;
                    if state == 0 || state > x as u64 {
                        return Err(bad(line_no, "edge state outside expanded graph"));
                    }
                    edge_state.push((state - 1) as VertexId);
                }
                Some(_) => return Err(bad(line_no, "unknown line type")),
            }
        }
        let (n, m, x) = header.ok_or_else(|| bad(0, "missing header"))?;
        if vertex_copies.len() != n || edge_state.len() != m {
            return Err(FormatError::Truncated);
        }
        Ok(TurnExpansionMapping {
            edge_state,
            vertex_copies,
            sink,
            expanded_vertex_count: x,
        })
    }
}

/// Expands `graph` so that turn costs become edge weights.
pub fn turn_expand(graph: &Graph, costs: TurnCosts) -> Result<(Graph, TurnExpansionMapping), GraphError> {
    let n = graph.vertex_count();
    let m = graph.edge_count();
    // out-edge copies reuse the original edge ids, sinks follow
    let edge_state: Vec<VertexId> = (0..m as VertexId).collect();
    let mut vertex_copies = Vec::with_capacity(n);
    let mut sink = vec![None; n];
    let mut next_sink = m as VertexId;
    for v in 0..n as VertexId {
        let range = graph.out_edges(v);
        vertex_copies.push((range.start, range.len() as u32));
        if range.is_empty() {
            sink[v as usize] = Some(next_sink);
            next_sink += 1;
        }
    }
    let expanded_vertex_count = next_sink as usize;
    if expanded_vertex_count > VertexId::MAX as usize {
        return Err(GraphError::TooManyVertices(expanded_vertex_count));
    }

    let mut edges = Vec::new();
    for (id, e) in graph.edges().enumerate() {
        let from = edge_state[id];
        let out = graph.out_edges(e.head);
        if out.is_empty() {
            edges.push(Edge::new(from, sink[e.head as usize].unwrap(), e.weight));
            continue;
        }
        for f in out {
            let to_head = graph.head(f);
            let weight = e
                .weight
                .checked_add(costs.cost(e.tail, to_head))
                .ok_or(GraphError::WeightOverflow {
                    tail: e.tail,
                    head: e.head,
                })?;
            edges.push(Edge::new(from, edge_state[f as usize], weight));
        }
    }
    let expanded = Graph::from_edges(expanded_vertex_count, edges)?;
    Ok((
        expanded,
        TurnExpansionMapping {
            edge_state,
            vertex_copies,
            sink,
            expanded_vertex_count,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dijkstra::dijkstra;
    use crate::graph::{Distance, INFINITY};
    use crate::testutil::random_graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    const COSTS: TurnCosts = TurnCosts { uturn: 100, turn: 0 };

    /// Turn-aware search over "just traversed edge e" states. Returns, for a
    /// start edge, the cost of ending at each departure state (original edge
    /// id) and at each vertex as a final destination.
    fn brute_force(g: &Graph, start: u32, costs: TurnCosts) -> (Vec<Distance>, Vec<Distance>) {
        let m = g.edge_count();
        let mut arrived = vec![INFINITY; m];
        let mut heap = BinaryHeap::new();
        arrived[start as usize] = g.weight(start) as Distance;
        heap.push(Reverse((arrived[start as usize], start)));
        while let Some(Reverse((d, e))) = heap.pop() {
            if d > arrived[e as usize] {
                continue;
            }
            for f in 0..m as u32 {
                if g.tail(f) == g.head(e) {
                    let nd = d + (costs.cost(g.tail(e), g.head(f)) + g.weight(f)) as Distance;
                    if nd < arrived[f as usize] {
                        arrived[f as usize] = nd;
                        heap.push(Reverse((nd, f)));
                    }
                }
            }
        }
        let mut depart = vec![INFINITY; m];
        depart[start as usize] = 0;
        let mut at_vertex = vec![INFINITY; g.vertex_count()];
        for e in 0..m as u32 {
            if arrived[e as usize] == INFINITY {
                continue;
            }
            let v = g.head(e);
            at_vertex[v as usize] = at_vertex[v as usize].min(arrived[e as usize]);
            for f in 0..m as u32 {
                if g.tail(f) == v {
                    let c = arrived[e as usize] + costs.cost(g.tail(e), g.head(f)) as Distance;
                    depart[f as usize] = depart[f as usize].min(c);
                }
            }
        }
        (depart, at_vertex)
    }

    #[test]
    fn single_edge_gets_sink() {
        let g = Graph::from_edges(2, [Edge::new(0, 1, 7)]).unwrap();
        let (x, map) = turn_expand(&g, COSTS).unwrap();
        assert_eq!(x.vertex_count(), 2);
        assert_eq!(x.edges().collect::<Vec<_>>(), vec![Edge::new(0, 1, 7)]);
        assert_eq!(map.sink, vec![None, Some(1)]);
        // vertex 0 has one copy, vertex 1 only the sink
        assert_eq!(map.copies(0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(map.copies(1).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn uturn_is_penalized() {
        // triangle 0 -> 1 -> 2 -> 0 plus the reverse edge 1 -> 0
        let g = Graph::from_edges(
            3,
            [
                Edge::new(0, 1, 5),
                Edge::new(1, 0, 6),
                Edge::new(1, 2, 1),
                Edge::new(2, 0, 1),
            ],
        )
        .unwrap();
        let (x, map) = turn_expand(&g, COSTS).unwrap();
        let from = map.edge_state[g.find_edge(0, 1).unwrap() as usize];
        let to = map.edge_state[g.find_edge(1, 0).unwrap() as usize];
        assert_eq!(x.weight(x.find_edge(from, to).unwrap()), 5 + 100);
        let straight = map.edge_state[g.find_edge(1, 2).unwrap() as usize];
        assert_eq!(x.weight(x.find_edge(from, straight).unwrap()), 5);
    }

    #[test]
    fn vertex_count_is_edges_plus_sinks() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let g = random_graph(&mut rng, 15, 0.1, 9);
            let (x, map) = turn_expand(&g, COSTS).unwrap();
            let sinks = (0..15).filter(|&v| g.out_degree(v) == 0).count();
            assert_eq!(x.vertex_count(), g.edge_count() + sinks);
            let expected_edges: usize = g.edges().map(|e| g.out_degree(e.head).max(1)).sum();
            assert_eq!(x.edge_count(), expected_edges);
            let mut owners = map.owners();
            owners.sort_unstable();
            assert_eq!(owners.len(), x.vertex_count());
        }
    }

    #[test]
    fn distances_match_turn_aware_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for round in 0..50 {
            let n = rng.gen_range(2..=20);
            let g = random_graph(&mut rng, n, 0.2, 50);
            let costs = if round % 2 == 0 {
                COSTS
            } else {
                TurnCosts { uturn: 100, turn: 3 }
            };
            let (x, map) = turn_expand(&g, costs).unwrap();
            for start in 0..g.edge_count() as u32 {
                let (depart, at_vertex) = brute_force(&g, start, costs);
                let d = dijkstra(&x, map.edge_state[start as usize]);
                for f in 0..g.edge_count() {
                    assert_eq!(d.dist[map.edge_state[f] as usize], depart[f]);
                }
                for v in 0..n as u32 {
                    if let Some(s) = map.sink[v as usize] {
                        assert_eq!(d.dist[s as usize], at_vertex[v as usize]);
                    }
                }
            }
        }
    }

    #[test]
    fn mapping_text_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = random_graph(&mut rng, 12, 0.15, 9);
        let (_, map) = turn_expand(&g, COSTS).unwrap();
        let text = map.to_text(&g);
        let back = TurnExpansionMapping::parse(text.as_bytes()).unwrap();
        assert_eq!(back, map);
        assert!(TurnExpansionMapping::parse("t 1 0 1\n".as_bytes()).is_err());
        assert!(TurnExpansionMapping::parse("v 1 1 0 -\n".as_bytes()).is_err());
    }
}
