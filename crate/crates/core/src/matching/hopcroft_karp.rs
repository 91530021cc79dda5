//! Hopcroft-Karp over an explicit left-to-right adjacency, with an optional
//! mask of active left vertices and single-path augmentation for incremental
//! callers.

use std::collections::VecDeque;

pub(crate) const NONE: usize = usize::MAX;
const INF: u32 = u32::MAX;

pub(crate) struct Matcher<'a> {
    adj: &'a [Vec<usize>],
    pub(crate) mate_left: Vec<usize>,
    pub(crate) mate_right: Vec<usize>,
    dist: Vec<u32>,
    cursor: Vec<usize>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'a> Matcher<'a> {
    pub(crate) fn new(adj: &'a [Vec<usize>], right_len: usize) -> Self {
        let n = adj.len();
        Matcher {
            adj,
            mate_left: vec![NONE; n],
            mate_right: vec![NONE; right_len],
            dist: vec![INF; n],
            cursor: vec![0; n],
            stamp: vec![0; right_len],
            epoch: 0,
        }
    }

    pub(crate) fn size(&self) -> usize {
        self.mate_left.iter().filter(|&&r| r != NONE).count()
    }

    /// Grows the current matching to a maximum one over the active left
    /// vertices. Already matched vertices stay matched.
    pub(crate) fn maximize(&mut self, active: &dyn Fn(usize) -> bool) -> usize {
        while self.layer(active) {
            let mut progressed = false;
            for root in 0..self.adj.len() {
                if active(root) && self.mate_left[root] == NONE && self.dist[root] == 0 {
                    progressed |= self.layered_path(root);
                }
            }
            if !progressed {
                break;
            }
        }
        self.size()
    }

    fn layer(&mut self, active: &dyn Fn(usize) -> bool) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.adj.len() {
            self.cursor[u] = 0;
            if active(u) && self.mate_left[u] == NONE {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &r in &self.adj[u] {
                let w = self.mate_right[r];
                if w == NONE {
                    found = true;
                } else if self.dist[w] == INF {
                    self.dist[w] = self.dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn layered_path(&mut self, root: usize) -> bool {
        let mut lefts = vec![root];
        let mut rights: Vec<usize> = Vec::new();
        while let Some(&u) = lefts.last() {
            if self.cursor[u] < self.adj[u].len() {
                let r = self.adj[u][self.cursor[u]];
                self.cursor[u] += 1;
                let w = self.mate_right[r];
                if w == NONE {
                    rights.push(r);
                    self.flip(&lefts, &rights);
                    return true;
                }
                if self.dist[w] != INF && self.dist[w] == self.dist[u] + 1 {
                    rights.push(r);
                    lefts.push(w);
                }
            } else {
                self.dist[u] = INF;
                lefts.pop();
                rights.pop();
            }
        }
        false
    }

    fn flip(&mut self, lefts: &[usize], rights: &[usize]) {
        for (&u, &r) in lefts.iter().zip(rights) {
            self.mate_left[u] = r;
            self.mate_right[r] = u;
        }
    }

    /// Looks for one augmenting path from the free left vertex `root`.
    pub(crate) fn augment(&mut self, root: usize) -> bool {
        debug_assert_eq!(self.mate_left[root], NONE);
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let mut lefts = vec![root];
        let mut rights: Vec<usize> = Vec::new();
        let mut idx = vec![0usize];
        while let Some(&u) = lefts.last() {
            let top = idx.len() - 1;
            if idx[top] < self.adj[u].len() {
                let r = self.adj[u][idx[top]];
                idx[top] += 1;
                if self.stamp[r] == self.epoch {
                    continue;
                }
                self.stamp[r] = self.epoch;
                rights.push(r);
                let w = self.mate_right[r];
                if w == NONE {
                    self.flip(&lefts, &rights);
                    return true;
                }
                lefts.push(w);
                idx.push(0);
            } else {
                lefts.pop();
                idx.pop();
                rights.pop();
            }
        }
        false
    }

    /// Frees left vertex `u` if it is matched.
    pub(crate) fn release(&mut self, u: usize) {
        let r = self.mate_left[u];
        if r != NONE {
            self.mate_left[u] = NONE;
            self.mate_right[r] = NONE;
        }
    }
}
