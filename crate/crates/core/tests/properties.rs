use proptest::prelude::*;

use eh_core::ch::build_contraction_hierarchy;
use eh_core::dijkstra::{dijkstra, BidirectionalDijkstra};
use eh_core::dimacs::{parse_dimacs_str, to_dimacs_string};
use eh_core::eh::{unpack_path, StallPolicy};
use eh_core::io::{
    decode_contraction_hierarchy, decode_edge_hierarchy, encode_contraction_hierarchy, encode_edge_hierarchy,
};
use eh_core::reorder::reorder_dfs_preorder;
use eh_core::turns::{turn_expand, TurnCosts};
use eh_core::{build_edge_hierarchy, ChQuery, Distance, Edge, EhQuery, Graph, OracleKind, INFINITY};

fn graph_strategy(max_n: usize, max_w: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n as u32, 0..n as u32, 0..=max_w), 0..=(n * 4))
            .prop_map(move |edges| Graph::from_edges(n, edges.into_iter().map(|(u, v, w)| Edge::new(u, v, w))).unwrap())
    })
}

fn all_pairs(g: &Graph) -> Vec<Vec<Distance>> {
    (0..g.vertex_count() as u32).map(|s| dijkstra(g, s).dist).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimacs_round_trip(g in graph_strategy(30, 1000)) {
        let text = to_dimacs_string(&g);
        let back = parse_dimacs_str(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(to_dimacs_string(&back), text);
    }

    #[test]
    fn reorder_keeps_distances(g in graph_strategy(25, 50)) {
        let (h, perm) = reorder_dfs_preorder(&g);
        let (a, b) = (all_pairs(&g), all_pairs(&h));
        for s in 0..g.vertex_count() {
            for t in 0..g.vertex_count() {
                prop_assert_eq!(a[s][t], b[perm[s] as usize][perm[t] as usize]);
            }
        }
    }

    #[test]
    fn bidirectional_agrees_with_unidirectional(g in graph_strategy(30, 50)) {
        let truth = all_pairs(&g);
        let mut bd = BidirectionalDijkstra::new(g.vertex_count());
        for s in 0..g.vertex_count() as u32 {
            for t in 0..g.vertex_count() as u32 {
                let (d, path) = bd.query(&g, s, t);
                prop_assert_eq!(d, truth[s as usize][t as usize]);
                if d != INFINITY {
                    prop_assert_eq!(path.first(), Some(&s));
                    prop_assert_eq!(path.last(), Some(&t));
                    let mut sum = 0;
                    for w in path.windows(2) {
                        let e = g.find_edge(w[0], w[1]);
                        prop_assert!(e.is_some());
                        sum += g.weight(e.unwrap()) as Distance;
                    }
                    prop_assert_eq!(sum, d);
                }
            }
        }
    }

    #[test]
    fn ch_is_exact(g in graph_strategy(30, 50)) {
        let truth = all_pairs(&g);
        let ch = build_contraction_hierarchy(&g);
        let mut q = ChQuery::new(&ch);
        for s in 0..g.vertex_count() as u32 {
            for t in 0..g.vertex_count() as u32 {
                prop_assert_eq!(q.query(s, t, true).0, truth[s as usize][t as usize]);
                prop_assert_eq!(q.query(s, t, false).0, truth[s as usize][t as usize]);
            }
        }
    }

    #[test]
    fn oracles_give_same_distances(g in graph_strategy(24, 30)) {
        let a = build_edge_hierarchy(&g, OracleKind::Ch);
        let b = build_edge_hierarchy(&g, OracleKind::Dijkstra);
        let (mut qa, mut qb) = (EhQuery::new(&a), EhQuery::new(&b));
        for s in 0..g.vertex_count() as u32 {
            for t in 0..g.vertex_count() as u32 {
                prop_assert_eq!(qa.distance(s, t), qb.distance(s, t));
            }
        }
    }

    #[test]
    fn unpacked_paths_are_shortest(g in graph_strategy(24, 30)) {
        let truth = all_pairs(&g);
        let eh = build_edge_hierarchy(&g, OracleKind::Ch);
        let mut q = EhQuery::new(&eh);
        for s in 0..g.vertex_count() as u32 {
            for t in 0..g.vertex_count() as u32 {
                let r = q.query(s, t, StallPolicy::OnDemand);
                prop_assert_eq!(r.distance, truth[s as usize][t as usize]);
                if r.distance == INFINITY || s == t {
                    continue;
                }
                let path = unpack_path(&eh, &r.path).unwrap();
                prop_assert_eq!(path.first().map(|e| e.tail), Some(s));
                prop_assert_eq!(path.last().map(|e| e.head), Some(t));
                let mut sum = 0;
                for (i, e) in path.iter().enumerate() {
                    let orig = g.find_edge(e.tail, e.head);
                    prop_assert!(orig.is_some());
                    prop_assert_eq!(g.weight(orig.unwrap()), e.weight);
                    if i > 0 {
                        prop_assert_eq!(path[i - 1].head, e.tail);
                    }
                    sum += e.weight as Distance;
                }
                prop_assert_eq!(sum, r.distance);
            }
        }
    }

    #[test]
    fn adjacency_is_rank_descending(g in graph_strategy(30, 30)) {
        let eh = build_edge_hierarchy(&g, OracleKind::Ch);
        prop_assert!(eh.edges().iter().all(|e| e.rank != u64::MAX));
        for v in 0..eh.vertex_count() as u32 {
            let out: Vec<_> = eh.out_edges(v).map(|e| eh.edge(e).rank).collect();
            prop_assert!(out.windows(2).all(|w| w[0] >= w[1]));
            let inc: Vec<_> = eh.in_edges(v).iter().map(|&e| eh.edge(e).rank).collect();
            prop_assert!(inc.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn binary_round_trip_keeps_answers(g in graph_strategy(20, 30)) {
        let eh = build_edge_hierarchy(&g, OracleKind::Ch);
        let eh2 = decode_edge_hierarchy(&encode_edge_hierarchy(&eh)).unwrap();
        prop_assert_eq!(&eh2, &eh);
        let ch = build_contraction_hierarchy(&g);
        let ch2 = decode_contraction_hierarchy(&encode_contraction_hierarchy(&ch)).unwrap();
        prop_assert_eq!(&ch2, &ch);
        let (mut a, mut b) = (EhQuery::new(&eh), EhQuery::new(&eh2));
        for s in 0..g.vertex_count() as u32 {
            for t in 0..g.vertex_count() as u32 {
                let (x, y) = (a.query(s, t, StallPolicy::InAdvance), b.query(s, t, StallPolicy::InAdvance));
                prop_assert_eq!(x.distance, y.distance);
                prop_assert_eq!(x.stats.counts(), y.stats.counts());
            }
        }
    }

    #[test]
    fn expansion_size(g in graph_strategy(30, 30), uturn in 0u32..200) {
        let (x, map) = turn_expand(&g, TurnCosts { uturn, turn: 0 }).unwrap();
        let sinks = (0..g.vertex_count() as u32).filter(|&v| g.out_degree(v) == 0).count();
        prop_assert_eq!(x.vertex_count(), g.edge_count() + sinks);
        prop_assert_eq!(map.edge_state.len(), g.edge_count());
        let mut seen = vec![false; x.vertex_count()];
        for v in 0..g.vertex_count() as u32 {
            for c in map.copies(v) {
                prop_assert!(!seen[c as usize]);
                seen[c as usize] = true;
            }
        }
        prop_assert!(seen.iter().all(|&b| b));
    }
}
