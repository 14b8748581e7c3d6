use super::EdgeHierarchy;
use crate::error::UnpackError;
use crate::graph::{Edge, EdgeId};

enum Step {
    Expand(EdgeId),
    Leave(EdgeId),
}

/// Replaces every shortcut of `packed` by the two edges around its via
/// vertex, recursively. Returned edges use external vertex ids.
pub fn unpack_path(eh: &EdgeHierarchy, packed: &[EdgeId]) -> Result<Vec<Edge>, UnpackError> {
    let mut out = Vec::new();
    let mut open = vec![false; eh.edge_count()];
    let mut stack: Vec<Step> = packed.iter().rev().map(|&e| Step::Expand(e)).collect();
    while let Some(step) = stack.pop() {
        let id = match step {
            Step::Leave(id) => {
                open[id as usize] = false;
                continue;
            }
            Step::Expand(id) => id,
        };
        let e = eh.edge(id);
        if !e.is_shortcut() {
            let (tail, head) = (eh.to_external(e.tail), eh.to_external(e.head));
            let weight = u32::try_from(e.weight).map_err(|_| UnpackError::WeightRange {
                tail,
                head,
                weight: e.weight,
            })?;
            out.push(Edge::new(tail, head, weight));
            continue;
        }
        if std::mem::replace(&mut open[id as usize], true) {
            return Err(UnpackError::Cycle);
        }
        let find = |a, b| {
            eh.find_edge(a, b).ok_or(UnpackError::MissingEdge {
                tail: eh.to_external(a),
                head: eh.to_external(b),
            })
        };
        let first = find(e.tail, e.via)?;
        let second = find(e.via, e.head)?;
        stack.push(Step::Leave(id));
        stack.push(Step::Expand(second));
        stack.push(Step::Expand(first));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eh::EhEdge;
    use crate::graph::VertexId;

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
    fn originals_are_identity() {
        let eh = EdgeHierarchy::from_edges(vec![0, 1, 2], vec![original(0, 1, 2, 0), original(1, 2, 3, 1)]);
        let path: Vec<EdgeId> = vec![eh.find_edge(0, 1).unwrap(), eh.find_edge(1, 2).unwrap()];
        assert_eq!(
            unpack_path(&eh, &path).unwrap(),
            vec![Edge::new(0, 1, 2), Edge::new(1, 2, 3)]
        );
    }

    #[test]
    fn nested_shortcuts_expand() {
        // 0 -> 3 via 2, (0, 2) via 1
        let eh = EdgeHierarchy::from_edges(
            vec![0, 1, 2, 3],
            vec![
                original(0, 1, 1, 0),
                original(1, 2, 1, 1),
                original(2, 3, 1, 2),
                EhEdge {
                    tail: 0,
                    head: 2,
                    weight: 2,
                    rank: 3,
                    via: 1,
                },
                EhEdge {
                    tail: 0,
                    head: 3,
                    weight: 3,
                    rank: 4,
                    via: 2,
                },
            ],
        );
        let e = eh.find_edge(0, 3).unwrap();
        let edges = unpack_path(&eh, &[e]).unwrap();
        assert_eq!(edges, vec![Edge::new(0, 1, 1), Edge::new(1, 2, 1), Edge::new(2, 3, 1)]);
    }

    #[test]
    fn external_ids_are_reported() {
        let eh = EdgeHierarchy::from_edges(vec![1, 0], vec![original(1, 0, 5, 0)]);
        assert_eq!(unpack_path(&eh, &[0]).unwrap(), vec![Edge::new(0, 1, 5)]);
    }

    #[test]
    fn cycle_and_missing_edges_are_errors() {
        // (0, 2) via 1 needs (0, 1), which goes via 2 and needs (0, 2) again
        let eh = EdgeHierarchy::from_edges(
            vec![0, 1, 2],
            vec![
                EhEdge {
                    tail: 0,
                    head: 2,
                    weight: 2,
                    rank: 0,
                    via: 1,
                },
                EhEdge {
                    tail: 0,
                    head: 1,
                    weight: 1,
                    rank: 1,
                    via: 2,
                },
                EhEdge {
                    tail: 2,
                    head: 1,
                    weight: 1,
                    rank: 2,
                    via: VertexId::MAX,
                },
                EhEdge {
                    tail: 1,
                    head: 2,
                    weight: 1,
                    rank: 3,
                    via: VertexId::MAX,
                },
            ],
        );
        let e = eh.find_edge(0, 2).unwrap();
        assert_eq!(unpack_path(&eh, &[e]), Err(UnpackError::Cycle));

        let eh = EdgeHierarchy::from_edges(
            vec![0, 1, 2],
            vec![EhEdge {
                tail: 0,
                head: 2,
                weight: 2,
                rank: 0,
                via: 1,
            }],
        );
        assert_eq!(
            unpack_path(&eh, &[0]),
            Err(UnpackError::MissingEdge { tail: 0, head: 1 })
        );
    }
}
