//! Exact solvers and ILP export.
//!
//! [`brute_force_min_inputs`] enumerates candidate sets and is the reference
//! oracle for small graphs. [`branch_and_bound`] scales further by branching
//! on domination and completing the matching condition exactly. The two ILP
//! formulations can be written as LP text for external solvers, or solved
//! in-process for small models.

mod bnb;
mod ilp;

use itertools::Itertools;

use crate::graph::{accessibility_graph, ChainBound, DiGraph, InputSet};
use crate::lcc_solver::{bounds_with_access, InputSetChecker, Method, Solution};
use crate::{Error, Result};

pub use bnb::{branch_and_bound, BnbOutcome};
pub use ilp::{build_ilp_cycling, build_ilp_naive, read_solution, write_lp, Constraint, IlpModel, IlpOptimum, Sense};

/// Largest graph the subset enumeration accepts by default.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 16;

pub fn brute_force_min_inputs(g: &DiGraph, ell: ChainBound) -> Result<Solution> {
    brute_force_min_inputs_capped(g, ell, DEFAULT_BRUTE_FORCE_CAP)
}

/// Tries sets in order of size, lexicographically within a size, and
/// returns the first valid one. Nodes with no predecessor in the
/// accessibility graph can only dominate themselves and are always included.
pub fn brute_force_min_inputs_capped(g: &DiGraph, ell: ChainBound, cap: usize) -> Result<Solution> {
    let n = g.node_count();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let access = accessibility_graph(g, ell);
    let lower = bounds_with_access(g, &access).lower;
    let checker = InputSetChecker::with_access(g, access);

    let mut mask: Vec<bool> = (0..n).map(|v| checker.access_graph().in_degree(v) == 0).collect();
    let forced = mask.iter().filter(|&&f| f).count();
    let free: Vec<usize> = (0..n).filter(|&v| !mask[v]).collect();

    for k in lower.saturating_sub(forced)..=free.len() {
        for combo in free.iter().copied().combinations(k) {
            combo.iter().for_each(|&v| mask[v] = true);
            let ok = checker.check_mask(&mask);
            if ok {
                let inputs: InputSet = (0..n).filter(|&v| mask[v]).collect();
                return Ok(exact_solution(inputs, Method::ExactBruteforce, ell));
            }
            combo.iter().for_each(|&v| mask[v] = false);
        }
    }
    unreachable!("the full node set is always a valid input set")
}

pub(crate) fn exact_solution(inputs: InputSet, method: Method, ell: ChainBound) -> Solution {
    Solution {
        n_inputs: inputs.len(),
        inputs,
        valid: true,
        m_core_size: None,
        ds_core_size: None,
        method,
        ell,
        seed: 0,
    }
}

/// Minimum dominating set of `g`, obtained by putting a self-loop on every
/// node and solving the one-step problem exactly. The self-loops make every
/// node matchable to itself, so only domination remains.
pub fn mds_via_reduction(g: &DiGraph) -> Result<InputSet> {
    let looped = g.with_all_self_loops();
    Ok(brute_force_min_inputs(&looped, ChainBound::Steps(1))?.inputs)
}
