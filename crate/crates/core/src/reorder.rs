//! Vertex renumbering for memory locality.

use crate::graph::{Graph, VertexId};

const UNVISITED: VertexId = VertexId::MAX;

/// DFS preorder over forward adjacency. Restarts at the smallest unvisited
/// id. Returns `permutation[old] = new`.
pub fn dfs_preorder(graph: &Graph) -> Vec<VertexId> {
    let n = graph.vertex_count();
    let mut order = vec![UNVISITED; n];
    let mut next_id: VertexId = 0;
    let mut stack: Vec<(VertexId, u32)> = Vec::new();
    for root in 0..n as VertexId {
        if order[root as usize] != UNVISITED {
            continue;
        }
        order[root as usize] = next_id;
        next_id += 1;
        stack.push((root, graph.out_edges(root).start));
        while let Some(top) = stack.last_mut() {
            let (v, cursor) = *top;
            if cursor == graph.out_edges(v).end {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let w = graph.head(cursor);
            if order[w as usize] == UNVISITED {
                order[w as usize] = next_id;
                next_id += 1;
                stack.push((w, graph.out_edges(w).start));
            }
        }
    }
    order
}

pub fn invert_permutation(permutation: &[VertexId]) -> Vec<VertexId> {
    let mut inverse = vec![0; permutation.len()];
    for (old, &new) in permutation.iter().enumerate() {
        inverse[new as usize] = old as VertexId;
    }
    inverse
}

pub fn reorder_dfs_preorder(graph: &Graph) -> (Graph, Vec<VertexId>) {
    let permutation = dfs_preorder(graph);
    (graph.permuted(&permutation), permutation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dijkstra::dijkstra;
    use crate::graph::Edge;
    use crate::testutil::random_graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn path_is_identity() {
        let g = Graph::from_edges(3, [Edge::new(0, 1, 1), Edge::new(1, 2, 1)]).unwrap();
        assert_eq!(dfs_preorder(&g), vec![0, 1, 2]);
    }

    #[test]
    fn star_center_gets_discovery_position() {
        let mut edges = Vec::new();
        for leaf in 0..5 {
            edges.push(Edge::new(5, leaf, 1 + leaf));
            edges.push(Edge::new(leaf, 5, 2));
        }
        let g = Graph::from_edges(6, edges).unwrap();
        let (h, perm) = reorder_dfs_preorder(&g);
        assert_eq!(perm, vec![0, 2, 3, 4, 5, 1]);
        for s in 0..6u32 {
            let before = dijkstra(&g, s);
            let after = dijkstra(&h, perm[s as usize]);
            for t in 0..6 {
                assert_eq!(before.dist[t], after.dist[perm[t] as usize]);
            }
        }
    }

    #[test]
    fn bijection_on_disconnected_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = random_graph(&mut rng, 30, 0.03, 10);
            let perm = dfs_preorder(&g);
            let mut seen = perm.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..30).collect::<Vec<_>>());
            let inv = invert_permutation(&perm);
            for v in 0..30 {
                assert_eq!(inv[perm[v] as usize], v as u32);
            }
        }
    }
}
