//! Addressable binary min-heap with decrease-key.
//!
//! Elements are dense `u32` ids. Ordering is by `(key, id)`, so pops are
//! deterministic when keys tie.

const ABSENT: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct IndexedHeap<K> {
    items: Vec<(K, u32)>,
    position: Vec<u32>,
}

impl<K: Ord + Copy> IndexedHeap<K> {
    pub fn new(capacity: usize) -> Self {
        IndexedHeap {
            items: Vec::new(),
            position: vec![ABSENT; capacity],
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, id: u32) -> bool {
        self.position[id as usize] != ABSENT
    }

    pub fn peek(&self) -> Option<(K, u32)> {
        self.items.first().copied()
    }

    pub fn key_of(&self, id: u32) -> Option<K> {
        let pos = self.position[id as usize];
        (pos != ABSENT).then(|| self.items[pos as usize].0)
    }

    /// Inserts `id`, or lowers its key if already present with a larger one.
    /// Returns true when the heap changed.
    pub fn push_or_decrease(&mut self, id: u32, key: K) -> bool {
        let pos = self.position[id as usize];
        if pos == ABSENT {
            let at = self.items.len();
            self.items.push((key, id));
            self.position[id as usize] = at as u32;
            self.sift_up(at);
            true
        } else if key < self.items[pos as usize].0 {
            self.items[pos as usize].0 = key;
            self.sift_up(pos as usize);
            true
        } else {
            false
        }
    }

    pub fn pop(&mut self) -> Option<(K, u32)> {
        if self.items.is_empty() {
            return None;
        }
        let top = self.items.swap_remove(0);
        self.position[top.1 as usize] = ABSENT;
        if !self.items.is_empty() {
            self.position[self.items[0].1 as usize] = 0;
            self.sift_down(0);
        }
        Some(top)
    }

    pub fn clear(&mut self) {
        for &(_, id) in &self.items {
            self.position[id as usize] = ABSENT;
        }
        self.items.clear();
    }

    fn less(&self, a: usize, b: usize) -> bool {
        self.items[a] < self.items[b]
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.items.swap(a, b);
        self.position[self.items[a].1 as usize] = a as u32;
        self.position[self.items[b].1 as usize] = b as u32;
    }

    fn sift_up(&mut self, mut at: usize) {
        while at > 0 {
            let parent = (at - 1) / 2;
            if !self.less(at, parent) {
                break;
            }
            self.swap(at, parent);
            at = parent;
        }
    }

    fn sift_down(&mut self, mut at: usize) {
        loop {
            let left = 2 * at + 1;
            if left >= self.items.len() {
                break;
            }
            let right = left + 1;
            let child = if right < self.items.len() && self.less(right, left) {
                right
            } else {
                left
            };
            if !self.less(child, at) {
                break;
            }
            self.swap(at, child);
            at = child;
        }
    }
}
