//! Maximum matchings in the split-node representation.
//!
//! A matching here is a set of `(plus, minus)` edges with pairwise distinct
//! plus ids and pairwise distinct minus ids. An unmatched minus vertex is a
//! node that no matching link points at; those are exactly the nodes that
//! need their own input signal.

pub(crate) mod hopcroft_karp;
mod leaf_removal;

use crate::graph::{BipartiteGraph, DiGraph, InputSet};
use hopcroft_karp::{Matcher, NONE};

pub(crate) use leaf_removal::ResidualBipartite;
pub use leaf_removal::{mlr, mlr_complete, MlrResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate_of_plus: Vec<Option<usize>>,
    mate_of_minus: Vec<Option<usize>>,
    size: usize,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate_of_plus: vec![None; n],
            mate_of_minus: vec![None; n],
            size: 0,
        }
    }

    /// Validates that no two edges share an endpoint on either side.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Option<Self> {
        let mut m = Matching::empty(n);
        for (p, q) in edges {
            if p >= n || q >= n || m.mate_of_plus[p].is_some() || m.mate_of_minus[q].is_some() {
                return None;
            }
            m.insert(p, q);
        }
        Some(m)
    }

    pub(crate) fn insert(&mut self, plus: usize, minus: usize) {
        assert!(self.mate_of_plus[plus].is_none(), "plus vertex {plus} already matched");
        assert!(
            self.mate_of_minus[minus].is_none(),
            "minus vertex {minus} already matched"
        );
        self.mate_of_plus[plus] = Some(minus);
        self.mate_of_minus[minus] = Some(plus);
        self.size += 1;
    }

    /// Drops the edge covering `minus`, returning its plus partner.
    pub(crate) fn remove_minus(&mut self, minus: usize) -> Option<usize> {
        let plus = self.mate_of_minus[minus].take()?;
        self.mate_of_plus[plus] = None;
        self.size -= 1;
        Some(plus)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn side_len(&self) -> usize {
        self.mate_of_minus.len()
    }

    pub fn is_plus_matched(&self, p: usize) -> bool {
        self.mate_of_plus[p].is_some()
    }

    pub fn is_minus_matched(&self, m: usize) -> bool {
        self.mate_of_minus[m].is_some()
    }

    pub fn mate_of_minus(&self, m: usize) -> Option<usize> {
        self.mate_of_minus[m]
    }

    /// Edges sorted by plus id.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate_of_plus
            .iter()
            .enumerate()
            .filter_map(|(p, m)| m.map(|m| (p, m)))
            .collect()
    }

    /// Nodes whose minus copy is uncovered.
    pub fn unmatched_minus(&self) -> InputSet {
        (0..self.side_len())
            .filter(|&m| self.mate_of_minus[m].is_none())
            .collect()
    }
}

/// Minus-side adjacency: for every minus vertex, its plus neighbours.
pub(crate) fn minus_adjacency(b: &BipartiteGraph) -> Vec<Vec<usize>> {
    (0..b.side_len()).map(|m| b.minus_neighbors(m).collect()).collect()
}

/// Same adjacency built straight from a graph's predecessor lists.
pub(crate) fn minus_adjacency_of(g: &DiGraph) -> Vec<Vec<usize>> {
    (0..g.node_count()).map(|v| g.predecessors(v).to_vec()).collect()
}

pub fn hopcroft_karp(b: &BipartiteGraph) -> Matching {
    let adj = minus_adjacency(b);
    let mut matcher = Matcher::new(&adj, b.side_len());
    matcher.maximize(&|_| true);
    let mut m = Matching::empty(b.side_len());
    for (minus, &plus) in matcher.mate_left.iter().enumerate() {
        if plus != NONE {
            m.insert(plus, minus);
        }
    }
    m
}

/// Whether some matching leaves every minus vertex outside `inputs`
/// covered, i.e. whether the unmatched nodes can be confined to `inputs`.
pub fn max_matching_leaving_unmatched(b: &BipartiteGraph, inputs: &InputSet) -> bool {
    let adj = minus_adjacency(b);
    saturates_all_but(&adj, b.side_len(), &inputs.mask(b.side_len()))
}

pub(crate) fn saturates_all_but(adj: &[Vec<usize>], right_len: usize, excluded: &[bool]) -> bool {
    let mut matcher = Matcher::new(adj, right_len);
    let required = excluded.iter().filter(|&&x| !x).count();
    matcher.maximize(&|u| !excluded[u]) == required
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bipartite_repr, DiGraph};

    #[test]
    fn cycle_is_perfect() {
        let m = hopcroft_karp(&bipartite_repr(&DiGraph::cycle(3)));
        assert_eq!(m.len(), 3);
        assert!(m.unmatched_minus().is_empty());
    }

    #[test]
    fn chain_leaves_head_unmatched() {
        let m = hopcroft_karp(&bipartite_repr(&DiGraph::chain(5)));
        assert_eq!(m.len(), 4);
        assert_eq!(m.unmatched_minus().as_slice(), &[0]);
    }

    #[test]
    fn star_matches_once() {
        let m = hopcroft_karp(&bipartite_repr(&DiGraph::star(4)));
        assert_eq!(m.len(), 1);
        assert_eq!(m.unmatched_minus().len(), 3);
    }

    #[test]
    fn pruned_saturation() {
        let b = bipartite_repr(&DiGraph::chain(3));
        assert!(max_matching_leaving_unmatched(&b, &InputSet::new([0])));
        assert!(!max_matching_leaving_unmatched(&b, &InputSet::new([1])));
        let c = bipartite_repr(&DiGraph::cycle(3));
        assert!(max_matching_leaving_unmatched(&c, &InputSet::default()));
    }

    #[test]
    fn from_edges_rejects_conflicts() {
        assert!(Matching::from_edges(3, [(0, 1), (0, 2)]).is_none());
        assert!(Matching::from_edges(3, [(0, 1), (2, 1)]).is_none());
        let m = Matching::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(m.edges(), vec![(0, 1), (1, 2)]);
    }
}
