//! Seeded test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, Graph, VertexId, Weight};

/// Directed path `0 -> 1 -> ... -> n-1` with the given weight on every edge.
pub fn path_graph(n: usize, weight: Weight) -> Graph {
    let edges = (1..n).map(|v| Edge::new(v as VertexId - 1, v as VertexId, weight));
    Graph::from_edges(n, edges).expect("path ids are in range")
}

/// Erdős–Rényi style digraph: every ordered pair gets an edge with
/// probability `p`, weights uniform in `0..=max_weight`.
pub fn random_digraph(n: usize, p: f64, max_weight: Weight, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in 0..n as VertexId {
            if u != v && rng.gen_bool(p) {
                edges.push(Edge::new(u, v, rng.gen_range(0..=max_weight)));
            }
        }
    }
    Graph::from_edges(n, edges).expect("ids are in range")
}

/// Road-like network: a `width` x `height` grid of two-way streets with a
/// few missing blocks, plus a sparser grid of faster arterials every
/// `arterial_spacing` rows and columns. Weights are travel times.
pub fn road_grid(width: usize, height: usize, arterial_spacing: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |x: usize, y: usize| (y * width + x) as VertexId;
    let mut edges = Vec::new();
    let two_way = |edges: &mut Vec<Edge>, a: VertexId, b: VertexId, w: Weight, one_way: bool| {
        edges.push(Edge::new(a, b, w));
        if !one_way {
            edges.push(Edge::new(b, a, w));
        }
    };
    for y in 0..height {
        for x in 0..width {
            let arterial_row = arterial_spacing > 0 && y % arterial_spacing == 0;
            let arterial_col = arterial_spacing > 0 && x % arterial_spacing == 0;
            if x + 1 < width && rng.gen_bool(0.93) {
                let w = if arterial_row {
                    rng.gen_range(20..40)
                } else {
                    rng.gen_range(60..180)
                };
                let one_way = !arterial_row && rng.gen_bool(0.08);
                two_way(&mut edges, id(x, y), id(x + 1, y), w, one_way);
            }
            if y + 1 < height && rng.gen_bool(0.93) {
                let w = if arterial_col {
                    rng.gen_range(20..40)
                } else {
                    rng.gen_range(60..180)
                };
                let one_way = !arterial_col && rng.gen_bool(0.08);
                two_way(&mut edges, id(x, y), id(x, y + 1), w, one_way);
            }
        }
    }
    // arterial rows and columns are always connected
    if arterial_spacing > 0 {
        for y in (0..height).step_by(arterial_spacing) {
            for x in 0..width.saturating_sub(1) {
                let w = rng.gen_range(20..40);
                two_way(&mut edges, id(x, y), id(x + 1, y), w, false);
            }
        }
        for x in (0..width).step_by(arterial_spacing) {
            for y in 0..height.saturating_sub(1) {
                let w = rng.gen_range(20..40);
                two_way(&mut edges, id(x, y), id(x, y + 1), w, false);
            }
        }
    }
    Graph::from_edges(width * height, edges).expect("grid ids are in range")
}
