//! Brute-force oracles and generators shared by unit tests.

use rand::Rng;

use crate::graph::{Distance, Edge, Graph, INFINITY};

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, max_weight: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                edges.push(Edge::new(u as u32, v as u32, rng.gen_range(0..=max_weight)));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Distance>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for e in g.edges() {
        let cell = &mut d[e.tail as usize][e.head as usize];
        *cell = (*cell).min(e.weight as Distance);
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INFINITY {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INFINITY && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}
