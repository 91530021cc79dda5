//! Minimum input placement under a longest-control-chain budget.
//!
//! A node set `S` is a valid input set for budget `ell` when
//!
//! 1. some matching of the bipartite representation leaves exactly the
//!    minus copies of `S` uncovered, and
//! 2. `S` dominates the `ell`-step accessibility graph.
//!
//! [`solve_heuristic`] runs matching leaf removal on the bipartite graph and
//! dominating-set leaf removal on the accessibility graph side by side,
//! letting each decision on one graph update the other. Rules that could
//! hurt the other graph are gated until they are provably harmless. When
//! both stall, a greedy fallback breaks the tie and the rules resume.
//!
//! Once a core has formed the result is no longer guaranteed optimal, so it is
//! compared with the witness of the upper bound (unmatched nodes plus a
//! greedy dominating set) and redundant inputs are pruned from both.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dominating::{dslr_complete, is_dominating_set, NodeLabel, ResidualDigraph, DOMINANCE_CAP};
use crate::graph::{accessibility_graph, bipartite_repr, sources, BipartiteGraph, ChainBound, DiGraph, InputSet};
use crate::matching::hopcroft_karp::Matcher;
use crate::matching::{hopcroft_karp, minus_adjacency_of, saturates_all_but, Matching, ResidualBipartite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Heuristic,
    ExactBruteforce,
    ExactBnb,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub inputs: InputSet,
    pub n_inputs: usize,
    pub valid: bool,
    /// Residual bipartite edges when the rules first stalled (heuristic only).
    pub m_core_size: Option<usize>,
    /// Residual accessibility links when the rules first stalled (heuristic only).
    pub ds_core_size: Option<usize>,
    pub method: Method,
    pub ell: ChainBound,
    pub seed: u64,
}

impl Solution {
    /// True when leaf removal never stalled, so the heuristic is optimal.
    pub fn core_free(&self) -> bool {
        self.m_core_size == Some(0) && self.ds_core_size == Some(0)
    }
}

/// Precomputed structures for checking many candidate sets against one
/// graph and budget.
pub struct InputSetChecker {
    minus_adj: Vec<Vec<usize>>,
    access: DiGraph,
}

impl InputSetChecker {
    pub fn new(g: &DiGraph, ell: ChainBound) -> Self {
        Self::with_access(g, accessibility_graph(g, ell))
    }

    pub(crate) fn with_access(g: &DiGraph, access: DiGraph) -> Self {
        InputSetChecker {
            minus_adj: minus_adjacency_of(g),
            access,
        }
    }

    pub fn access_graph(&self) -> &DiGraph {
        &self.access
    }

    pub fn matching_condition(&self, mask: &[bool]) -> bool {
        saturates_all_but(&self.minus_adj, self.minus_adj.len(), mask)
    }

    pub fn domination_condition(&self, mask: &[bool]) -> bool {
        let g = &self.access;
        (0..g.node_count()).all(|v| mask[v] || g.predecessors(v).iter().any(|&u| mask[u]))
    }

    pub fn check_mask(&self, mask: &[bool]) -> bool {
        self.domination_condition(mask) && self.matching_condition(mask)
    }

    pub fn check(&self, s: &InputSet) -> bool {
        if s.as_slice().last().is_some_and(|&v| v >= self.minus_adj.len()) {
            return false;
        }
        self.check_mask(&s.mask(self.minus_adj.len()))
    }
}

/// Polynomial check of both validity conditions.
pub fn verify_input_set(g: &DiGraph, ell: ChainBound, s: &InputSet) -> bool {
    InputSetChecker::new(g, ell).check(s)
}

const PLUS_LEAF: usize = 0;
const DS1: usize = 1;
const MINUS_LEAF: usize = 2;
const DS2: usize = 3;
const DS3: usize = 4;
const DS4: usize = 5;

struct Coupled<'a> {
    b: ResidualBipartite<'a>,
    gl: ResidualDigraph,
    work: [BTreeSet<usize>; 6],
    first_stall: Option<(usize, usize)>,
}

impl<'a> Coupled<'a> {
    fn new(b: &'a BipartiteGraph, access: &DiGraph) -> Self {
        let n = b.side_len();
        let all: BTreeSet<usize> = (0..n).collect();
        Coupled {
            b: ResidualBipartite::new(b),
            gl: ResidualDigraph::new(access),
            work: std::array::from_fn(|_| all.clone()),
            first_stall: None,
        }
    }

    fn touch(&mut self, v: usize) {
        for set in &mut self.work {
            set.insert(v);
        }
        self.work[DS4].extend(self.gl.residual_successors(v));
    }

    /// Carries every pending change across to the other graph until both
    /// change logs are empty.
    fn propagate(&mut self) {
        loop {
            let plus = std::mem::take(&mut self.b.touched_plus);
            let minus = std::mem::take(&mut self.b.touched_minus);
            let nodes = std::mem::take(&mut self.gl.touched);
            if plus.is_empty() && minus.is_empty() && nodes.is_empty() {
                break;
            }
            for p in plus {
                self.touch(p);
            }
            for m in minus {
                self.touch(m);
                // an isolated, unmatched minus copy can only be an input
                if self.b.deg_minus(m) == 0
                    && !self.b.matching.is_minus_matched(m)
                    && self.gl.label(m) != NodeLabel::Dominating
                {
                    self.gl.make_dominating(m);
                }
            }
            for v in nodes {
                self.touch(v);
                if self.gl.label(v) == NodeLabel::Dominating {
                    // an input needs no matching partner
                    self.b.matching.remove_minus(v);
                    self.b.strip_minus(v);
                }
            }
        }
    }

    fn apply(&mut self, rule: usize, v: usize) -> bool {
        match rule {
            PLUS_LEAF => match self.b.sole_plus_edge(v) {
                Some(e) => {
                    self.b.match_edge(e);
                    true
                }
                None => false,
            },
            DS1 => {
                if self.gl.ds1_applies(v) {
                    self.gl.make_dominating(v);
                    true
                } else {
                    false
                }
            }
            MINUS_LEAF => {
                if self.gl.label(v) != NodeLabel::Observed || self.gl.out_deg(v) != 0 {
                    return false;
                }
                match self.b.sole_minus_edge(v) {
                    Some(e) => {
                        self.b.match_edge(e);
                        true
                    }
                    None => false,
                }
            }
            DS2 => {
                if !self.b.matching.is_minus_matched(v) {
                    return false;
                }
                match self.gl.ds2_target(v) {
                    Some(w) => {
                        self.gl.make_dominating(w);
                        true
                    }
                    None => false,
                }
            }
            DS3 => self.b.matching.is_minus_matched(v) && self.gl.try_ds3(v),
            DS4 => {
                let matching = &self.b.matching;
                match self
                    .gl
                    .dominance_target(v, DOMINANCE_CAP, &|u| matching.is_minus_matched(u))
                {
                    Some(w) => {
                        self.gl.make_dominating(w);
                        true
                    }
                    None => false,
                }
            }
            _ => unreachable!(),
        }
    }

    fn exhaust_rules(&mut self) {
        'outer: loop {
            self.propagate();
            for rule in 0..self.work.len() {
                while let Some(v) = self.work[rule].pop_first() {
                    if self.apply(rule, v) {
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }

    /// One greedy step when no rule applies. Returns false when both graphs
    /// are exhausted.
    fn fallback(&mut self) -> bool {
        if self.b.edge_count() > 0 {
            // match the minus copy least likely to be needed as a dominator
            let n = self.b.side_len();
            let m = (0..n)
                .filter(|&m| self.b.deg_minus(m) > 0)
                .min_by_key(|&m| (self.gl.degree(m), m))
                .expect("residual edges have endpoints");
            let e = self
                .b
                .alive_minus_edges(m)
                .min_by_key(|&e| {
                    let (p, _) = self.b.edge(e);
                    (self.b.deg_plus(p), p)
                })
                .expect("vertex has residual degree");
            self.b.match_edge(e);
            return true;
        }
        match self.gl.highest_degree_node() {
            Some(v) => {
                self.gl.make_dominating(v);
                true
            }
            None => false,
        }
    }

    fn run(&mut self) {
        loop {
            self.exhaust_rules();
            if self.first_stall.is_none() {
                self.first_stall = Some((self.b.edge_count(), self.gl.link_count()));
            }
            if !self.fallback() {
                break;
            }
        }
    }
}

/// Runs the coupled leaf-removal heuristic. The result is always a valid
/// input set; it is optimal whenever no core formed.
pub fn solve_heuristic(g: &DiGraph, ell: ChainBound, seed: u64) -> Solution {
    let access = accessibility_graph(g, ell);
    solve_with_access(g, access, ell, seed)
}

pub(crate) fn solve_with_access(g: &DiGraph, access: DiGraph, ell: ChainBound, seed: u64) -> Solution {
    let b = bipartite_repr(g);
    let mut state = Coupled::new(&b, &access);
    state.run();
    let coupled = state.gl.dominating_set();
    let (m_core, ds_core) = state.first_stall.unwrap_or((0, 0));
    debug_assert!(matching_is_consistent(&state.b.matching, &coupled));

    let minus_adj = minus_adjacency_of(g);
    let mut inputs = prune(&minus_adj, &access, coupled);
    if m_core + ds_core > 0 {
        let union = prune(&minus_adj, &access, bound_construction(g, &access));
        if union.len() < inputs.len() {
            inputs = union;
        }
    }

    let checker = InputSetChecker::with_access(g, access);
    let valid = checker.check(&inputs);
    assert!(valid, "coupled leaf removal produced an invalid input set");
    Solution {
        n_inputs: inputs.len(),
        inputs,
        valid,
        m_core_size: Some(m_core),
        ds_core_size: Some(ds_core),
        method: Method::Heuristic,
        ell,
        seed,
    }
}

/// Unmatched nodes of a maximum matching plus a greedy dominating set: the
/// witness behind the upper bound.
fn bound_construction(g: &DiGraph, access: &DiGraph) -> InputSet {
    let unmatched = hopcroft_karp(&bipartite_repr(g)).unmatched_minus();
    let ds = dslr_complete(access);
    InputSet::new(unmatched.iter().chain(ds.iter()))
}

/// Drops inputs that are redundant for both conditions: every node they
/// cover has another dominator, and their minus copy can be matched by one
/// augmenting path.
fn prune(minus_adj: &[Vec<usize>], access: &DiGraph, s: InputSet) -> InputSet {
    let n = minus_adj.len();
    let mut in_set = s.mask(n);
    let mut matcher = Matcher::new(minus_adj, n);
    matcher.maximize(&|v| !in_set[v]);
    let mut covered_by = vec![0u32; n];
    for &v in s.as_slice() {
        covered_by[v] += 1;
        for &w in access.successors(v) {
            covered_by[w] += 1;
        }
    }
    for &v in s.as_slice() {
        let spare = covered_by[v] > 1 && access.successors(v).iter().all(|&w| covered_by[w] > 1);
        if spare && matcher.augment(v) {
            in_set[v] = false;
            covered_by[v] -= 1;
            for &w in access.successors(v) {
                covered_by[w] -= 1;
            }
        }
    }
    InputSet::new((0..n).filter(|&v| in_set[v]))
}

fn matching_is_consistent(m: &Matching, inputs: &InputSet) -> bool {
    (0..m.side_len()).all(|v| m.is_minus_matched(v) != inputs.contains(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Unmatched nodes of a maximum matching.
    pub n_m: usize,
    /// Size of a greedy dominating set of the accessibility graph.
    pub n_ds: usize,
    /// Nodes without incoming links.
    pub n_s: usize,
    pub lower: usize,
    pub upper: usize,
}

/// Lower bound `min(n_m, n_ds)` and upper bound `n_m + n_ds - n_s`, where the
/// dominating set comes from greedy leaf removal.
pub fn bounds(g: &DiGraph, ell: ChainBound) -> Bounds {
    let access = accessibility_graph(g, ell);
    bounds_with_access(g, &access)
}

pub(crate) fn bounds_with_access(g: &DiGraph, access: &DiGraph) -> Bounds {
    let n_m = g.node_count() - hopcroft_karp(&bipartite_repr(g)).len();
    let ds = dslr_complete(access);
    debug_assert!(is_dominating_set(access, &ds));
    let n_ds = ds.len();
    let n_s = sources(g).len();
    Bounds {
        n_m,
        n_ds,
        n_s,
        lower: n_m.min(n_ds),
        upper: n_m + n_ds - n_s,
    }
}
