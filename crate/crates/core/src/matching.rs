//! Maximum cardinality bipartite matching (Hopcroft–Karp) and minimum vertex
//! cover extraction via König's theorem.

use std::collections::VecDeque;

const FREE: u32 = u32::MAX;

/// Bipartite graph with `left_count` left and `right_count` right vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteCoverInstance {
    pub left_count: usize,
    pub right_count: usize,
    /// Right neighbors of every left vertex.
    pub adjacency: Vec<Vec<u32>>,
}

/// A vertex cover split by side.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexCover {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl VertexCover {
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Right partner of each left vertex.
    pub left_mate: Vec<u32>,
    /// Left partner of each right vertex.
    pub right_mate: Vec<u32>,
    pub size: usize,
}

impl BipartiteCoverInstance {
    pub fn new(left_count: usize, right_count: usize) -> Self {
        BipartiteCoverInstance {
            left_count,
            right_count,
            adjacency: vec![Vec::new(); left_count],
        }
    }

    pub fn add_edge(&mut self, left: u32, right: u32) {
        debug_assert!((left as usize) < self.left_count && (right as usize) < self.right_count);
        self.adjacency[left as usize].push(right);
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(l, rs)| rs.iter().map(move |&r| (l as u32, r)))
    }

    pub fn is_cover(&self, cover: &VertexCover) -> bool {
        let mut in_left = vec![false; self.left_count];
        let mut in_right = vec![false; self.right_count];
        cover.left.iter().for_each(|&l| in_left[l as usize] = true);
        cover.right.iter().for_each(|&r| in_right[r as usize] = true);
        self.edges().all(|(l, r)| in_left[l as usize] || in_right[r as usize])
    }

    pub fn maximum_matching(&self) -> Matching {
        HopcroftKarp::new(self).run()
    }

    /// Minimum vertex cover. Its size equals the maximum matching size.
    pub fn min_vertex_cover(&self) -> VertexCover {
        let matching = self.maximum_matching();
        self.konig_cover(&matching)
    }

    /// König: with `Z` the vertices reachable from free left vertices along
    /// alternating paths, the cover is `(L \ Z) ∪ (R ∩ Z)`.
    pub fn konig_cover(&self, matching: &Matching) -> VertexCover {
        let mut left_seen = vec![false; self.left_count];
        let mut right_seen = vec![false; self.right_count];
        let mut queue = VecDeque::new();
        for l in 0..self.left_count {
            if matching.left_mate[l] == FREE {
                left_seen[l] = true;
                queue.push_back(l as u32);
            }
        }
        while let Some(l) = queue.pop_front() {
            for &r in &self.adjacency[l as usize] {
                if right_seen[r as usize] || matching.left_mate[l as usize] == r {
                    continue;
                }
                right_seen[r as usize] = true;
                let next = matching.right_mate[r as usize];
                if next != FREE && !left_seen[next as usize] {
                    left_seen[next as usize] = true;
                    queue.push_back(next);
                }
            }
        }
        VertexCover {
            left: (0..self.left_count as u32)
                .filter(|&l| !left_seen[l as usize])
                .collect(),
            right: (0..self.right_count as u32)
                .filter(|&r| right_seen[r as usize])
                .collect(),
        }
    }
}

struct HopcroftKarp<'a> {
    instance: &'a BipartiteCoverInstance,
    left_mate: Vec<u32>,
    right_mate: Vec<u32>,
    layer: Vec<u32>,
    cursor: Vec<usize>,
}

impl<'a> HopcroftKarp<'a> {
    fn new(instance: &'a BipartiteCoverInstance) -> Self {
        HopcroftKarp {
            instance,
            left_mate: vec![FREE; instance.left_count],
            right_mate: vec![FREE; instance.right_count],
            layer: vec![0; instance.left_count],
            cursor: vec![0; instance.left_count],
        }
    }

    fn run(mut self) -> Matching {
        let mut size = 0;
        while self.build_layers() {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            for l in 0..self.instance.left_count as u32 {
                if self.left_mate[l as usize] == FREE && self.augment(l) {
                    size += 1;
                }
            }
        }
        Matching {
            left_mate: self.left_mate,
            right_mate: self.right_mate,
            size,
        }
    }

    /// BFS layering from free left vertices; true if an augmenting path exists.
    fn build_layers(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for l in 0..self.instance.left_count {
            if self.left_mate[l] == FREE {
                self.layer[l] = 0;
                queue.push_back(l as u32);
            } else {
                self.layer[l] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &self.instance.adjacency[l as usize] {
                let next = self.right_mate[r as usize];
                if next == FREE {
                    found = true;
                } else if self.layer[next as usize] == u32::MAX {
                    self.layer[next as usize] = self.layer[l as usize] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    /// Layered DFS with an explicit stack (paths can be long).
    fn augment(&mut self, root: u32) -> bool {
        let adjacency = &self.instance.adjacency;
        let mut stack = vec![root];
        while let Some(&l) = stack.last() {
            let li = l as usize;
            if self.cursor[li] == adjacency[li].len() {
                // dead end: drop this vertex from the layered graph
                self.layer[li] = u32::MAX;
                stack.pop();
                continue;
            }
            let r = adjacency[li][self.cursor[li]];
            self.cursor[li] += 1;
            let next = self.right_mate[r as usize];
            if next == FREE {
                // flip the path: each stack entry takes the right vertex it
                // last advanced over
                let mut right = r;
                while let Some(left) = stack.pop() {
                    let prev = self.left_mate[left as usize];
                    self.left_mate[left as usize] = right;
                    self.right_mate[right as usize] = left;
                    right = prev;
                }
                return true;
            }
            if self.layer[next as usize] == self.layer[li].wrapping_add(1) {
                stack.push(next);
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force_min_cover(inst: &BipartiteCoverInstance) -> usize {
        let total = inst.left_count + inst.right_count;
        let edges: Vec<(u32, u32)> = inst.edges().collect();
        let mut best = total;
        for mask in 0u32..(1 << total) {
            let size = mask.count_ones() as usize;
            if size >= best {
                continue;
            }
            let covered = edges
                .iter()
                .all(|&(l, r)| mask & (1 << l) != 0 || mask & (1 << (inst.left_count as u32 + r)) != 0);
            if covered {
                best = size;
            }
        }
        best
    }

    fn random_instance(rng: &mut impl Rng, max_side: usize) -> BipartiteCoverInstance {
        let l = rng.gen_range(0..=max_side);
        let r = rng.gen_range(0..=max_side);
        let p = rng.gen_range(0.05..0.6);
        let mut inst = BipartiteCoverInstance::new(l, r);
        for a in 0..l as u32 {
            for b in 0..r as u32 {
                if rng.gen_bool(p) {
                    inst.add_edge(a, b);
                }
            }
        }
        inst
    }

    #[test]
    fn star_center_on_left() {
        let mut inst = BipartiteCoverInstance::new(1, 3);
        for r in 0..3 {
            inst.add_edge(0, r);
        }
        let cover = inst.min_vertex_cover();
        assert_eq!(
            cover,
            VertexCover {
                left: vec![0],
                right: vec![]
            }
        );
    }

    #[test]
    fn perfect_matching() {
        let mut inst = BipartiteCoverInstance::new(3, 3);
        for i in 0..3 {
            inst.add_edge(i, i);
        }
        assert_eq!(inst.maximum_matching().size, 3);
        assert_eq!(inst.min_vertex_cover().len(), 3);
    }

    #[test]
    fn empty_instance() {
        let inst = BipartiteCoverInstance::new(0, 0);
        assert!(inst.min_vertex_cover().is_empty());
    }

    #[test]
    fn matches_exhaustive_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..150 {
            let inst = random_instance(&mut rng, 8);
            let matching = inst.maximum_matching();
            let cover = inst.konig_cover(&matching);
            assert!(inst.is_cover(&cover));
            assert_eq!(cover.len(), matching.size);
            assert_eq!(cover.len(), brute_force_min_cover(&inst));
        }
    }

    proptest! {
        #[test]
        fn matching_is_consistent(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let inst = random_instance(&mut rng, 30);
            let m = inst.maximum_matching();
            let mut count = 0;
            for (l, &r) in m.left_mate.iter().enumerate() {
                if r != FREE {
                    count += 1;
                    prop_assert_eq!(m.right_mate[r as usize], l as u32);
                    prop_assert!(inst.adjacency[l].contains(&r));
                }
            }
            prop_assert_eq!(count, m.size);
            let cover = inst.konig_cover(&m);
            prop_assert!(inst.is_cover(&cover));
            prop_assert_eq!(cover.len(), m.size);
        }
    }
}
