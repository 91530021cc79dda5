//! Dominating-set leaf removal on directed graphs.
//!
//! Nodes carry a label (unobserved, observed, dominating). Three local rules
//! fire until none applies:
//!
//! * DS1: an unobserved node with no predecessor joins the set.
//! * DS2: an unobserved node with a single predecessor and no unobserved
//!   successor makes that predecessor join the set.
//! * DS3: an observed node with a single unobserved successor loses the link
//!   to it.
//! * DS4 (lowest priority): an unobserved node `v` can be covered by itself
//!   or by one of its predecessors. If one of those candidates covers a
//!   superset of what every other candidate covers, it joins the set. DS1
//!   and DS2 are the one- and two-candidate cases of this rule.
//!
//! Links into observed nodes are deleted as soon as the node is observed, so
//! every residual link points at an unobserved node and "unobserved
//! successor" is simply "residual out-link". The links that survive rule
//! exhaustion form the DS-core. Self-loops never matter for domination and
//! are ignored.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{DiGraph, InputSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeLabel {
    Unobserved,
    Observed,
    Dominating,
}

impl NodeLabel {
    /// Dominating nodes count as covered too.
    pub fn is_covered(self) -> bool {
        self != NodeLabel::Unobserved
    }
}

/// Residual copy of a graph with domination labels. Changes are logged in
/// `touched`.
pub(crate) struct ResidualDigraph {
    tails: Vec<usize>,
    heads: Vec<usize>,
    out_links: Vec<Vec<usize>>,
    in_links: Vec<Vec<usize>>,
    alive: Vec<bool>,
    out_deg: Vec<usize>,
    in_deg: Vec<usize>,
    alive_links: usize,
    labels: Vec<NodeLabel>,
    pub(crate) touched: Vec<usize>,
}

impl ResidualDigraph {
    pub(crate) fn new(g: &DiGraph) -> Self {
        let n = g.node_count();
        let mut r = ResidualDigraph {
            tails: Vec::new(),
            heads: Vec::new(),
            out_links: vec![Vec::new(); n],
            in_links: vec![Vec::new(); n],
            alive: Vec::new(),
            out_deg: vec![0; n],
            in_deg: vec![0; n],
            alive_links: 0,
            labels: vec![NodeLabel::Unobserved; n],
            touched: Vec::new(),
        };
        for (t, h) in g.links().filter(|&(t, h)| t != h) {
            let id = r.tails.len();
            r.tails.push(t);
            r.heads.push(h);
            r.out_links[t].push(id);
            r.in_links[h].push(id);
            r.out_deg[t] += 1;
            r.in_deg[h] += 1;
        }
        r.alive = vec![true; r.tails.len()];
        r.alive_links = r.tails.len();
        r
    }

    pub(crate) fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub(crate) fn link_count(&self) -> usize {
        self.alive_links
    }

    pub(crate) fn label(&self, v: usize) -> NodeLabel {
        self.labels[v]
    }

    pub(crate) fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub(crate) fn out_deg(&self, v: usize) -> usize {
        self.out_deg[v]
    }

    pub(crate) fn degree(&self, v: usize) -> usize {
        self.in_deg[v] + self.out_deg[v]
    }

    pub(crate) fn alive_link_list(&self) -> Vec<(usize, usize)> {
        let mut links: Vec<_> = (0..self.alive.len())
            .filter(|&l| self.alive[l])
            .map(|l| (self.tails[l], self.heads[l]))
            .collect();
        links.sort_unstable();
        links
    }

    pub(crate) fn dominating_set(&self) -> InputSet {
        (0..self.node_count())
            .filter(|&v| self.labels[v] == NodeLabel::Dominating)
            .collect()
    }

    fn delete_link(&mut self, l: usize) {
        if !self.alive[l] {
            return;
        }
        self.alive[l] = false;
        self.alive_links -= 1;
        let (t, h) = (self.tails[l], self.heads[l]);
        self.out_deg[t] -= 1;
        self.in_deg[h] -= 1;
        self.touched.push(t);
        self.touched.push(h);
    }

    fn strip_in_links(&mut self, v: usize) {
        for i in 0..self.in_links[v].len() {
            let l = self.in_links[v][i];
            self.delete_link(l);
        }
    }

    /// Marks `v` observed (if it was not already covered) and drops its
    /// incoming links.
    pub(crate) fn observe(&mut self, v: usize) {
        if self.labels[v] == NodeLabel::Unobserved {
            self.labels[v] = NodeLabel::Observed;
            self.touched.push(v);
        }
        self.strip_in_links(v);
    }

    /// Puts `v` in the dominating set and observes all of its successors.
    /// Returns the successors that were unobserved before the call.
    pub(crate) fn make_dominating(&mut self, v: usize) -> Vec<usize> {
        let mut newly_observed = Vec::new();
        if self.labels[v] == NodeLabel::Dominating {
            return newly_observed;
        }
        self.labels[v] = NodeLabel::Dominating;
        self.touched.push(v);
        for i in 0..self.out_links[v].len() {
            let w = self.heads[self.out_links[v][i]];
            if self.labels[w] == NodeLabel::Unobserved {
                newly_observed.push(w);
            }
            self.observe(w);
        }
        self.strip_in_links(v);
        newly_observed
    }

    pub(crate) fn sole_predecessor(&self, v: usize) -> Option<usize> {
        if self.in_deg[v] != 1 {
            return None;
        }
        self.in_links[v]
            .iter()
            .find(|&&l| self.alive[l])
            .map(|&l| self.tails[l])
    }

    fn sole_out_link(&self, v: usize) -> Option<usize> {
        if self.out_deg[v] != 1 {
            return None;
        }
        self.out_links[v].iter().copied().find(|&l| self.alive[l])
    }

    pub(crate) fn ds1_applies(&self, v: usize) -> bool {
        self.labels[v] == NodeLabel::Unobserved && self.in_deg[v] == 0
    }

    /// DS2 target: the predecessor that must dominate `v`.
    pub(crate) fn ds2_target(&self, v: usize) -> Option<usize> {
        if self.labels[v] == NodeLabel::Unobserved && self.out_deg[v] == 0 {
            self.sole_predecessor(v)
        } else {
            None
        }
    }

    /// DS3: if `v` is observed with exactly one residual out-link, delete it.
    pub(crate) fn try_ds3(&mut self, v: usize) -> bool {
        if self.labels[v] != NodeLabel::Observed {
            return false;
        }
        match self.sole_out_link(v) {
            Some(l) => {
                self.delete_link(l);
                true
            }
            None => false,
        }
    }

    pub(crate) fn residual_successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_links[v]
            .iter()
            .filter(|&&l| self.alive[l])
            .map(|&l| self.heads[l])
    }

    /// Unobserved nodes that `u` would newly cover, sorted.
    fn cover(&self, u: usize) -> Vec<usize> {
        let mut c: Vec<usize> = self.residual_successors(u).collect();
        if self.labels[u] == NodeLabel::Unobserved {
            let pos = c.binary_search(&u).unwrap_err();
            c.insert(pos, u);
        }
        c
    }

    /// DS4 target for the unobserved node `v`: the candidate whose cover
    /// contains every other candidate's cover. `others_ok` must hold for all
    /// candidates except the chosen one. Skipped when `v` has more than
    /// `cap` candidates.
    pub(crate) fn dominance_target(&self, v: usize, cap: usize, others_ok: &dyn Fn(usize) -> bool) -> Option<usize> {
        if self.labels[v] != NodeLabel::Unobserved || self.in_deg[v] + 1 > cap {
            return None;
        }
        let mut candidates = vec![v];
        candidates.extend(
            self.in_links[v]
                .iter()
                .filter(|&&l| self.alive[l])
                .map(|&l| self.tails[l]),
        );
        let covers: Vec<Vec<usize>> = candidates.iter().map(|&u| self.cover(u)).collect();
        let widest = covers.iter().map(Vec::len).max()?;
        let mut order: Vec<usize> = (0..candidates.len()).filter(|&i| covers[i].len() == widest).collect();
        order.sort_by_key(|&i| candidates[i]);
        order.into_iter().map(|i| (i, candidates[i])).find_map(|(i, w)| {
            let dominates = covers
                .iter()
                .enumerate()
                .all(|(j, c)| j == i || is_sorted_subset(c, &covers[i]));
            let gated = candidates.iter().all(|&u| u == w || others_ok(u));
            (dominates && gated).then_some(w)
        })
    }

    /// Node with the largest residual total degree, lowest id on ties.
    pub(crate) fn highest_degree_node(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.node_count() {
            let d = self.degree(v);
            if d > 0 && best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best.map(|(_, v)| v)
    }
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Candidate-count limit for DS4, keeping the rule cheap on dense graphs.
pub(crate) const DOMINANCE_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct DslrResult {
    pub dominating: InputSet,
    pub labels: Vec<NodeLabel>,
    /// Residual links when no rule applies.
    pub ds_core_links: Vec<(usize, usize)>,
}

struct Worklists {
    ds1: BTreeSet<usize>,
    ds2: BTreeSet<usize>,
    ds3: BTreeSet<usize>,
    ds4: BTreeSet<usize>,
}

impl Worklists {
    fn all(n: usize) -> Self {
        Worklists {
            ds1: (0..n).collect(),
            ds2: (0..n).collect(),
            ds3: (0..n).collect(),
            ds4: (0..n).collect(),
        }
    }

    fn absorb(&mut self, r: &mut ResidualDigraph) {
        for v in std::mem::take(&mut r.touched) {
            self.ds1.insert(v);
            self.ds2.insert(v);
            self.ds3.insert(v);
            self.ds4.insert(v);
            // a changed cover of v matters to every node v could cover
            self.ds4.extend(r.residual_successors(v));
        }
    }
}

/// Applies the highest-priority applicable rule (DS1, DS2, DS3, then DS4;
/// lowest id within a rule) until none applies.
fn exhaust(r: &mut ResidualDigraph, work: &mut Worklists) {
    loop {
        work.absorb(r);
        if let Some(v) = work.ds1.pop_first() {
            if r.ds1_applies(v) {
                r.make_dominating(v);
            }
            continue;
        }
        if let Some(v) = work.ds2.pop_first() {
            if let Some(w) = r.ds2_target(v) {
                r.make_dominating(w);
            }
            continue;
        }
        if let Some(v) = work.ds3.pop_first() {
            r.try_ds3(v);
            continue;
        }
        if let Some(v) = work.ds4.pop_first() {
            if let Some(w) = r.dominance_target(v, DOMINANCE_CAP, &|_| true) {
                r.make_dominating(w);
            }
            continue;
        }
        break;
    }
}

/// Runs the rules to exhaustion and reports the partial dominating set
/// together with the DS-core.
pub fn dslr(g: &DiGraph) -> DslrResult {
    let mut r = ResidualDigraph::new(g);
    let mut work = Worklists::all(g.node_count());
    exhaust(&mut r, &mut work);
    DslrResult {
        dominating: r.dominating_set(),
        labels: r.labels().to_vec(),
        ds_core_links: r.alive_link_list(),
    }
}

/// Leaf removal completed greedily: whenever the rules stall on a non-empty
/// core, the node of highest residual degree joins the set.
pub fn dslr_complete(g: &DiGraph) -> InputSet {
    let mut r = ResidualDigraph::new(g);
    let mut work = Worklists::all(g.node_count());
    exhaust(&mut r, &mut work);
    while let Some(v) = r.highest_degree_node() {
        r.make_dominating(v);
        exhaust(&mut r, &mut work);
    }
    debug_assert!(r.labels().iter().all(|l| l.is_covered()));
    r.dominating_set()
}

/// Whether every node is in `set` or has a predecessor in it.
pub fn is_dominating_set(g: &DiGraph, set: &InputSet) -> bool {
    let mask = set.mask(g.node_count());
    (0..g.node_count()).all(|v| mask[v] || g.predecessors(v).iter().any(|&u| mask[u]))
}
