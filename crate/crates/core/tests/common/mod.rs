//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the solver modules of the crate.

#![allow(dead_code)]

use std::collections::HashSet;

use lcc_control::{ChainBound, DiGraph};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) digraph without self-loops.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> DiGraph {
    let mut links = Vec::new();
    for t in 0..n {
        for h in 0..n {
            if t != h && rng.gen_bool(p) {
                links.push((t, h));
            }
        }
    }
    DiGraph::from_links(n, links, false).unwrap()
}

/// All-pairs hop distances by Floyd-Warshall; `None` when unreachable.
/// The diagonal holds the shortest cycle length through the node, if any.
pub fn hop_distances(g: &DiGraph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (t, h) in g.links() {
        d[t][h] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn within(d: Option<usize>, ell: ChainBound) -> bool {
    match (d, ell) {
        (None, _) => false,
        (Some(_), ChainBound::Unbounded) => true,
        (Some(k), ChainBound::Steps(l)) => k <= l,
    }
}

/// Every node is a member of `s` or reachable from a member within `ell`
/// hops.
pub fn dominates(dist: &[Vec<Option<usize>>], ell: ChainBound, s: u32) -> bool {
    let n = dist.len();
    (0..n).all(|v| s >> v & 1 == 1 || (0..n).any(|u| s >> u & 1 == 1 && u != v && within(dist[u][v], ell)))
}

/// Head sets of every directed matching (links with distinct tails and
/// distinct heads), as bit masks.
pub fn matched_head_sets(g: &DiGraph) -> HashSet<u32> {
    fn walk(g: &DiGraph, v: usize, tails: u32, heads: u32, out: &mut HashSet<u32>) {
        if v == g.node_count() {
            out.insert(heads);
            return;
        }
        walk(g, v + 1, tails, heads, out);
        for &t in g.predecessors(v) {
            if tails >> t & 1 == 0 {
                walk(g, v + 1, tails | 1 << t, heads | 1 << v, out);
            }
        }
    }
    let mut out = HashSet::new();
    walk(g, 0, 0, 0, &mut out);
    out
}

/// Validity straight from the definition, for graphs with at most 31 nodes.
pub struct DefinitionOracle {
    n: usize,
    heads: HashSet<u32>,
    dist: Vec<Vec<Option<usize>>>,
}

impl DefinitionOracle {
    pub fn new(g: &DiGraph) -> Self {
        DefinitionOracle {
            n: g.node_count(),
            heads: matched_head_sets(g),
            dist: hop_distances(g),
        }
    }

    pub fn valid(&self, ell: ChainBound, s: u32) -> bool {
        let full = (1u32 << self.n) - 1;
        self.heads.contains(&(full & !s)) && dominates(&self.dist, ell, s)
    }

    pub fn min_inputs(&self, ell: ChainBound) -> usize {
        (0u32..1 << self.n)
            .filter(|&s| self.valid(ell, s))
            .map(|s| s.count_ones() as usize)
            .min()
            .expect("the full node set is always valid")
    }
}

/// Minimum dominating set size by enumeration: a member or an in-neighbour
/// of a member covers each node.
pub fn min_dominating_set(g: &DiGraph) -> usize {
    let n = g.node_count();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 1 || g.predecessors(v).iter().any(|&u| s >> u & 1 == 1)))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

pub fn mask_of(nodes: impl IntoIterator<Item = usize>) -> u32 {
    nodes.into_iter().fold(0, |m, v| m | 1 << v)
}
