//! Directed graphs, their bipartite split representation and the bounded-hop
//! accessibility closure.
//!
//! Nodes are dense integer ids `0..n`. Adjacency is stored twice (successors
//! and predecessors), each list sorted ascending, so every traversal in the
//! crate visits nodes in id order.

mod access;
mod bipartite;
pub mod io;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use access::{accessibility_graph, diameter, distances_from, lcc_length, sources};
pub use bipartite::{bipartite_repr, BipartiteGraph};

/// Directed simple graph on nodes `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    link_count: usize,
    allow_self_loops: bool,
}

impl DiGraph {
    /// Graph with `n` isolated nodes that rejects self-loops.
    pub fn new(n: usize) -> Self {
        Self::with_policy(n, false)
    }

    /// Graph with `n` isolated nodes that accepts self-loops.
    pub fn with_self_loops(n: usize) -> Self {
        Self::with_policy(n, true)
    }

    fn with_policy(n: usize, allow_self_loops: bool) -> Self {
        DiGraph {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            link_count: 0,
            allow_self_loops,
        }
    }

    /// Bulk constructor. Duplicate links are dropped.
    pub fn from_links<I>(n: usize, links: I, allow_self_loops: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::with_policy(n, allow_self_loops);
        for (t, h) in links {
            g.check_link(t, h)?;
            g.out_adj[t].push(h);
        }
        for list in &mut g.out_adj {
            list.sort_unstable();
            list.dedup();
        }
        g.rebuild_in_adj();
        Ok(g)
    }

    /// Builds from pre-sorted, deduplicated successor lists. Internal use only.
    pub(crate) fn from_sorted_out_adj(out_adj: Vec<Vec<usize>>, allow_self_loops: bool) -> Self {
        let mut g = DiGraph {
            in_adj: Vec::new(),
            out_adj,
            link_count: 0,
            allow_self_loops,
        };
        g.rebuild_in_adj();
        g
    }

    fn rebuild_in_adj(&mut self) {
        let n = self.out_adj.len();
        let mut in_adj = vec![Vec::new(); n];
        let mut count = 0;
        // tails are visited in ascending order, so every predecessor list ends up sorted
        for (t, succ) in self.out_adj.iter().enumerate() {
            for &h in succ {
                in_adj[h].push(t);
            }
            count += succ.len();
        }
        self.in_adj = in_adj;
        self.link_count = count;
    }

    fn check_link(&self, t: usize, h: usize) -> Result<()> {
        let n = self.node_count();
        if t >= n {
            return Err(Error::IdOutOfRange { id: t, n });
        }
        if h >= n {
            return Err(Error::IdOutOfRange { id: h, n });
        }
        if t == h && !self.allow_self_loops {
            return Err(Error::SelfLoop(t));
        }
        Ok(())
    }

    /// Inserts `t -> h`. Returns `false` if the link was already present.
    pub fn add_link(&mut self, t: usize, h: usize) -> Result<bool> {
        self.check_link(t, h)?;
        match self.out_adj[t].binary_search(&h) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.out_adj[t].insert(pos, h);
                let pos = self.in_adj[h].binary_search(&t).unwrap_err();
                self.in_adj[h].insert(pos, t);
                self.link_count += 1;
                Ok(true)
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn link_count(&self) -> usize {
        self.link_count
    }

    pub fn allows_self_loops(&self) -> bool {
        self.allow_self_loops
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn has_link(&self, t: usize, h: usize) -> bool {
        self.out_adj.get(t).is_some_and(|succ| succ.binary_search(&h).is_ok())
    }

    /// All links in lexicographic `(tail, head)` order.
    pub fn links(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(t, succ)| succ.iter().map(move |&h| (t, h)))
    }

    pub fn self_loop_count(&self) -> usize {
        (0..self.node_count()).filter(|&v| self.has_link(v, v)).count()
    }

    /// Copy of the graph with every self-loop removed.
    pub fn without_self_loops(&self) -> DiGraph {
        let out_adj = self
            .out_adj
            .iter()
            .enumerate()
            .map(|(t, succ)| succ.iter().copied().filter(|&h| h != t).collect())
            .collect();
        DiGraph::from_sorted_out_adj(out_adj, false)
    }

    /// Copy of the graph with a self-loop added to every node.
    pub fn with_all_self_loops(&self) -> DiGraph {
        let out_adj = self
            .out_adj
            .iter()
            .enumerate()
            .map(|(t, succ)| {
                let mut list = succ.clone();
                if let Err(pos) = list.binary_search(&t) {
                    list.insert(pos, t);
                }
                list
            })
            .collect();
        DiGraph::from_sorted_out_adj(out_adj, true)
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        self.in_adj.iter().map(Vec::len).collect()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.out_adj.iter().map(Vec::len).collect()
    }

    /// Directed path `0 -> 1 -> ... -> n-1`.
    pub fn chain(n: usize) -> DiGraph {
        let links = (1..n).map(|v| (v - 1, v));
        DiGraph::from_links(n, links, false).expect("chain links are in range")
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`. A 1-cycle is a self-loop.
    pub fn cycle(n: usize) -> DiGraph {
        let links = (0..n).map(|v| (v, (v + 1) % n));
        DiGraph::from_links(n, links, n == 1).expect("cycle links are in range")
    }

    /// Out-star: hub `0` points at every other node.
    pub fn star(n: usize) -> DiGraph {
        let links = (1..n).map(|v| (0, v));
        DiGraph::from_links(n, links, false).expect("star links are in range")
    }
}

/// Sorted set of input node ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct InputSet(Vec<usize>);

impl InputSet {
    pub fn new<I: IntoIterator<Item = usize>>(nodes: I) -> Self {
        let mut v: Vec<usize> = nodes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        InputSet(v)
    }

    /// Like [`InputSet::new`] but rejects ids outside `0..n`.
    pub fn checked<I: IntoIterator<Item = usize>>(n: usize, nodes: I) -> Result<Self> {
        let set = Self::new(nodes);
        match set.0.last() {
            Some(&id) if id >= n => Err(Error::IdOutOfRange { id, n }),
            _ => Ok(set),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<usize> for InputSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        InputSet::new(iter)
    }
}

/// Upper limit on the longest control chain.
///
/// `Unbounded` is the reachability closure, used for the unconstrained
/// problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainBound {
    Steps(usize),
    Unbounded,
}

impl ChainBound {
    /// # Panics
    /// If `k == 0`.
    pub fn steps(k: usize) -> Self {
        assert!(k >= 1, "chain bound must be at least 1");
        ChainBound::Steps(k)
    }

    /// Whether a path of `len` hops fits within the bound.
    pub fn admits(self, len: usize) -> bool {
        match self {
            ChainBound::Steps(k) => len <= k,
            ChainBound::Unbounded => true,
        }
    }

    pub fn as_steps(self) -> Option<usize> {
        match self {
            ChainBound::Steps(k) => Some(k),
            ChainBound::Unbounded => None,
        }
    }
}

impl fmt::Display for ChainBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainBound::Steps(k) => write!(f, "{k}"),
            ChainBound::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for ChainBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(ChainBound::Unbounded);
        }
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(ChainBound::Steps(k)),
            _ => Err(Error::Parse {
                line: 0,
                message: format!("chain bound must be a positive integer or 'inf', got {s:?}"),
            }),
        }
    }
}

impl Serialize for ChainBound {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ChainBound::Steps(k) => serializer.serialize_u64(*k as u64),
            ChainBound::Unbounded => serializer.serialize_str("inf"),
        }
    }
}
