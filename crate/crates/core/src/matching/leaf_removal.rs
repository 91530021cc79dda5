//! Matching leaf removal (Karp-Sipser): repeatedly match a degree-one
//! vertex to its only neighbour and delete both. What survives once no
//! leaves remain is the matching core.

use std::collections::VecDeque;

use rand::Rng;

use super::Matching;
use crate::graph::{BipartiteGraph, InputSet};

/// Mutable residual view of a bipartite graph plus the matching built so
/// far. Every degree change is logged in `touched_*` so drivers can refresh
/// their worklists.
pub(crate) struct ResidualBipartite<'a> {
    b: &'a BipartiteGraph,
    alive: Vec<bool>,
    deg_plus: Vec<usize>,
    deg_minus: Vec<usize>,
    alive_edges: usize,
    pub(crate) matching: Matching,
    pub(crate) touched_plus: Vec<usize>,
    pub(crate) touched_minus: Vec<usize>,
}

impl<'a> ResidualBipartite<'a> {
    pub(crate) fn new(b: &'a BipartiteGraph) -> Self {
        let n = b.side_len();
        ResidualBipartite {
            b,
            alive: vec![true; b.edge_count()],
            deg_plus: (0..n).map(|p| b.plus_edges(p).len()).collect(),
            deg_minus: (0..n).map(|m| b.minus_edges(m).len()).collect(),
            alive_edges: b.edge_count(),
            matching: Matching::empty(n),
            touched_plus: Vec::new(),
            touched_minus: Vec::new(),
        }
    }

    pub(crate) fn side_len(&self) -> usize {
        self.b.side_len()
    }

    pub(crate) fn edge_count(&self) -> usize {
        self.alive_edges
    }

    pub(crate) fn edge(&self, e: usize) -> (usize, usize) {
        self.b.edges()[e]
    }

    pub(crate) fn is_alive(&self, e: usize) -> bool {
        self.alive[e]
    }

    pub(crate) fn deg_plus(&self, p: usize) -> usize {
        self.deg_plus[p]
    }

    pub(crate) fn deg_minus(&self, m: usize) -> usize {
        self.deg_minus[m]
    }

    pub(crate) fn alive_minus_edges(&self, m: usize) -> impl Iterator<Item = usize> + '_ {
        self.b.minus_edges(m).iter().copied().filter(|&e| self.alive[e])
    }

    pub(crate) fn alive_edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.alive.len())
            .filter(|&e| self.alive[e])
            .map(|e| self.edge(e))
            .collect()
    }

    fn remove_edge(&mut self, e: usize) {
        if !self.alive[e] {
            return;
        }
        self.alive[e] = false;
        self.alive_edges -= 1;
        let (p, m) = self.b.edges()[e];
        self.deg_plus[p] -= 1;
        self.deg_minus[m] -= 1;
        self.touched_plus.push(p);
        self.touched_minus.push(m);
    }

    pub(crate) fn strip_plus(&mut self, p: usize) {
        for i in 0..self.b.plus_edges(p).len() {
            let e = self.b.plus_edges(p)[i];
            self.remove_edge(e);
        }
    }

    pub(crate) fn strip_minus(&mut self, m: usize) {
        for i in 0..self.b.minus_edges(m).len() {
            let e = self.b.minus_edges(m)[i];
            self.remove_edge(e);
        }
    }

    pub(crate) fn sole_plus_edge(&self, p: usize) -> Option<usize> {
        if self.deg_plus[p] != 1 {
            return None;
        }
        self.b.plus_edges(p).iter().copied().find(|&e| self.alive[e])
    }

    pub(crate) fn sole_minus_edge(&self, m: usize) -> Option<usize> {
        if self.deg_minus[m] != 1 {
            return None;
        }
        self.alive_minus_edges(m).next()
    }

    /// Puts edge `e` into the matching and deletes both endpoints.
    pub(crate) fn match_edge(&mut self, e: usize) {
        debug_assert!(self.alive[e]);
        let (p, m) = self.edge(e);
        self.matching.insert(p, m);
        self.strip_plus(p);
        self.strip_minus(m);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Leaf {
    Plus(usize),
    Minus(usize),
}

fn seed_leaves(r: &ResidualBipartite<'_>, queue: &mut VecDeque<Leaf>) {
    let n = r.side_len();
    queue.extend((0..n).filter(|&p| r.deg_plus(p) == 1).map(Leaf::Plus));
    queue.extend((0..n).filter(|&m| r.deg_minus(m) == 1).map(Leaf::Minus));
}

fn enqueue_new_leaves(r: &mut ResidualBipartite<'_>, queue: &mut VecDeque<Leaf>) {
    for p in std::mem::take(&mut r.touched_plus) {
        if r.deg_plus(p) == 1 {
            queue.push_back(Leaf::Plus(p));
        }
    }
    for m in std::mem::take(&mut r.touched_minus) {
        if r.deg_minus(m) == 1 {
            queue.push_back(Leaf::Minus(m));
        }
    }
}

fn remove_leaves(r: &mut ResidualBipartite<'_>, queue: &mut VecDeque<Leaf>) {
    while let Some(leaf) = queue.pop_front() {
        let edge = match leaf {
            Leaf::Plus(p) => r.sole_plus_edge(p),
            Leaf::Minus(m) => r.sole_minus_edge(m),
        };
        if let Some(e) = edge {
            r.match_edge(e);
            enqueue_new_leaves(r, queue);
        }
    }
}

#[derive(Clone, Debug)]
pub struct MlrResult {
    /// Matching built by leaf removal alone (maximum if the core is empty).
    pub matching: Matching,
    /// Edges left when no leaf remains.
    pub m_core_edges: Vec<(usize, usize)>,
    /// Minus vertices left with no edge and no partner.
    pub forced_unmatched: InputSet,
}

/// Leaf removal to exhaustion. Leaves are processed FIFO, seeded with plus
/// leaves then minus leaves in ascending id.
pub fn mlr(b: &BipartiteGraph) -> MlrResult {
    let mut r = ResidualBipartite::new(b);
    let mut queue = VecDeque::new();
    seed_leaves(&r, &mut queue);
    remove_leaves(&mut r, &mut queue);
    let forced_unmatched = (0..b.side_len())
        .filter(|&m| r.deg_minus(m) == 0 && !r.matching.is_minus_matched(m))
        .collect();
    MlrResult {
        m_core_edges: r.alive_edge_list(),
        matching: r.matching,
        forced_unmatched,
    }
}

/// Leaf removal, then repeatedly matches a uniformly random core edge and
/// resumes leaf removal until no edge is left. Returns a maximal matching.
pub fn mlr_complete<R: Rng + ?Sized>(b: &BipartiteGraph, rng: &mut R) -> Matching {
    let mut r = ResidualBipartite::new(b);
    let mut queue = VecDeque::new();
    seed_leaves(&r, &mut queue);
    remove_leaves(&mut r, &mut queue);
    let mut candidates: Vec<usize> = (0..b.edge_count()).filter(|&e| r.is_alive(e)).collect();
    while r.edge_count() > 0 {
        let i = rng.gen_range(0..candidates.len());
        let e = candidates[i];
        if !r.is_alive(e) {
            candidates.swap_remove(i);
            continue;
        }
        r.match_edge(e);
        enqueue_new_leaves(&mut r, &mut queue);
        remove_leaves(&mut r, &mut queue);
    }
    r.matching
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bipartite_repr, DiGraph};
    use crate::matching::hopcroft_karp;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cycle_splits_into_leaves() {
        // every split vertex of a directed cycle has degree one
        let res = mlr(&bipartite_repr(&DiGraph::cycle(3)));
        assert_eq!(res.matching.len(), 3);
        assert!(res.m_core_edges.is_empty());
        assert!(res.forced_unmatched.is_empty());
    }

    #[test]
    fn doubled_cycle_is_all_core() {
        let g = DiGraph::from_links(3, [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)], false).unwrap();
        let res = mlr(&bipartite_repr(&g));
        assert!(res.matching.is_empty());
        assert_eq!(res.m_core_edges.len(), 6);
    }

    #[test]
    fn chain_has_no_core() {
        let res = mlr(&bipartite_repr(&DiGraph::chain(5)));
        assert!(res.m_core_edges.is_empty());
        assert_eq!(res.matching.len(), 4);
        assert_eq!(res.forced_unmatched.as_slice(), &[0]);
    }

    #[test]
    fn star_isolates_two_leaves() {
        // 0- has no edge from the start; of 1-,2-,3- only the first is matched
        let b = bipartite_repr(&DiGraph::star(4));
        let res = mlr(&b);
        assert!(res.m_core_edges.is_empty());
        assert_eq!(res.matching.len(), hopcroft_karp(&b).len());
        assert_eq!(res.matching.edges(), vec![(0, 1)]);
        assert_eq!(res.forced_unmatched.as_slice(), &[0, 2, 3]);
    }

    #[test]
    fn completion_on_cycle_is_perfect() {
        let b = bipartite_repr(&DiGraph::cycle(3));
        for seed in 0..10 {
            let m = mlr_complete(&b, &mut ChaCha8Rng::seed_from_u64(seed));
            assert_eq!(m.len(), 3);
        }
    }

    #[test]
    fn completion_trivial_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(mlr_complete(&bipartite_repr(&DiGraph::new(4)), &mut rng).is_empty());
        assert_eq!(mlr_complete(&bipartite_repr(&DiGraph::chain(5)), &mut rng).len(), 4);
    }
}
