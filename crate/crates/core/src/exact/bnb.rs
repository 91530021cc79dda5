//! Depth-first branch and bound.
//!
//! Branching only has to pick dominators: given the chosen set `S`, the
//! cheapest way to also satisfy the matching condition is to add every minus
//! vertex that a maximum matching of `V- \ S` leaves uncovered. That matching
//! is maintained incrementally, so each search node knows its exact
//! completion cost, which doubles as a lower bound for the subtree.

use crate::graph::{accessibility_graph, ChainBound, DiGraph, InputSet};
use crate::lcc_solver::{solve_with_access, InputSetChecker, Method, Solution};
use crate::matching::hopcroft_karp::{Matcher, NONE};
use crate::matching::minus_adjacency_of;

#[derive(Clone, Debug)]
pub struct BnbOutcome {
    pub solution: Solution,
    /// Search nodes visited.
    pub explored: u64,
    /// False when the node limit cut the search short.
    pub optimal: bool,
}

struct Search<'a> {
    access: &'a DiGraph,
    matcher: Matcher<'a>,
    in_set: Vec<bool>,
    excluded: Vec<bool>,
    covered_by: Vec<u32>,
    size: usize,
    matched: usize,
    best: Vec<usize>,
    explored: u64,
    limit: u64,
    aborted: bool,
    stamp: Vec<u64>,
    epoch: u64,
}

impl<'a> Search<'a> {
    fn n(&self) -> usize {
        self.in_set.len()
    }

    fn deficiency(&self) -> usize {
        self.n() - self.size - self.matched
    }

    /// Candidates that could still dominate `v`.
    fn candidates(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(v)
            .chain(self.access.predecessors(v).iter().copied())
            .filter(|&u| !self.excluded[u])
    }

    fn gain(&self, c: usize) -> usize {
        std::iter::once(c)
            .chain(self.access.successors(c).iter().copied())
            .filter(|&v| self.covered_by[v] == 0)
            .count()
    }

    fn include(&mut self, c: usize) {
        self.in_set[c] = true;
        self.size += 1;
        self.covered_by[c] += 1;
        for &v in self.access.successors(c) {
            self.covered_by[v] += 1;
        }
        if self.matcher.mate_left[c] == NONE {
            return;
        }
        self.matcher.release(c);
        self.matched -= 1;
        // removing one left vertex costs at most one augmenting path
        for u in 0..self.n() {
            if !self.in_set[u] && self.matcher.mate_left[u] == NONE && self.matcher.augment(u) {
                self.matched += 1;
                break;
            }
        }
    }

    fn exclude_from_set(&mut self, c: usize) {
        self.in_set[c] = false;
        self.size -= 1;
        self.covered_by[c] -= 1;
        for &v in self.access.successors(c) {
            self.covered_by[v] -= 1;
        }
    }

    /// Uncovered nodes whose candidate sets are pairwise disjoint; each needs
    /// its own dominator.
    fn packing_bound(&mut self, uncovered: &[usize]) -> usize {
        self.epoch += 1;
        let mut count = 0;
        for &v in uncovered {
            let cands: Vec<usize> = self.candidates(v).collect();
            if cands.iter().all(|&u| self.stamp[u] != self.epoch) {
                count += 1;
                for u in cands {
                    self.stamp[u] = self.epoch;
                }
            }
        }
        count
    }

    fn record(&mut self) {
        let n = self.n();
        self.best = (0..n)
            .filter(|&v| self.in_set[v] || self.matcher.mate_left[v] == NONE)
            .collect();
    }

    fn dfs(&mut self) {
        if self.explored >= self.limit {
            self.aborted = true;
            return;
        }
        self.explored += 1;

        let uncovered: Vec<usize> = (0..self.n()).filter(|&v| self.covered_by[v] == 0).collect();
        let deficiency = self.deficiency();
        if uncovered.is_empty() {
            if self.size + deficiency < self.best.len() {
                self.record();
            }
            return;
        }
        let mut branch_on = None;
        for &v in &uncovered {
            let k = self.candidates(v).count();
            if k == 0 {
                return;
            }
            if branch_on.is_none_or(|(best_k, _)| k < best_k) {
                branch_on = Some((k, v));
            }
        }
        let packing = self.packing_bound(&uncovered);
        if self.size + deficiency.max(packing) >= self.best.len() {
            return;
        }

        let (_, v) = branch_on.expect("uncovered is non-empty");
        let mut cands: Vec<usize> = self.candidates(v).collect();
        cands.sort_by_key(|&c| (std::cmp::Reverse(self.gain(c)), c));
        let mut excluded_here = Vec::with_capacity(cands.len());
        for c in cands {
            let saved = (
                self.matcher.mate_left.clone(),
                self.matcher.mate_right.clone(),
                self.matched,
            );
            self.include(c);
            self.dfs();
            self.exclude_from_set(c);
            (self.matcher.mate_left, self.matcher.mate_right, self.matched) = saved;
            self.excluded[c] = true;
            excluded_here.push(c);
            if self.aborted {
                break;
            }
        }
        for c in excluded_here {
            self.excluded[c] = false;
        }
    }
}

/// Exact minimum input set, starting from the heuristic solution as
/// incumbent. `node_limit` caps the number of search nodes; when it is hit
/// the best set found so far is returned with `optimal = false`.
pub fn branch_and_bound(g: &DiGraph, ell: ChainBound, node_limit: u64) -> BnbOutcome {
    let n = g.node_count();
    let access = accessibility_graph(g, ell);
    let heuristic = solve_with_access(g, access.clone(), ell, 0);
    if node_limit == 0 {
        return BnbOutcome {
            solution: heuristic,
            explored: 0,
            optimal: false,
        };
    }

    let adj = minus_adjacency_of(g);
    let mut matcher = Matcher::new(&adj, n);
    let matched = matcher.maximize(&|_| true);
    let mut search = Search {
        access: &access,
        matcher,
        in_set: vec![false; n],
        excluded: vec![false; n],
        covered_by: vec![0; n],
        size: 0,
        matched,
        best: heuristic.inputs.as_slice().to_vec(),
        explored: 0,
        limit: node_limit,
        aborted: false,
        stamp: vec![0; n],
        epoch: 0,
    };
    search.dfs();

    let inputs = InputSet::new(search.best.iter().copied());
    let (explored, optimal) = (search.explored, !search.aborted);
    let checker = InputSetChecker::with_access(g, access);
    debug_assert!(checker.check(&inputs));
    let mut solution = super::exact_solution(inputs, Method::ExactBnb, ell);
    solution.valid = checker.check(&solution.inputs);
    BnbOutcome {
        solution,
        explored,
        optimal,
    }
}
