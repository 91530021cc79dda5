//! Experiment-level quantities: input fraction, cost of the chain budget,
//! first-stall core fractions, degree heterogeneity and heuristic gap.

use std::fmt::Write as _;

use serde::Serialize;

use crate::exact::{branch_and_bound, brute_force_min_inputs};
use crate::graph::{accessibility_graph, ChainBound, DiGraph};
use crate::lcc_solver::{solve_with_access, Solution};
use crate::{Error, Result};

/// `(N_i(ell) - N_i(inf)) / N` with the heuristic on both sides.
pub fn cost(g: &DiGraph, ell: ChainBound, seed: u64) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    let bounded = crate::solve_heuristic(g, ell, seed).n_inputs;
    let free = crate::solve_heuristic(g, ChainBound::Unbounded, seed).n_inputs;
    (bounded as f64 - free as f64) / n as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoreFractions {
    /// First-stall residual bipartite edges over `|E|`.
    pub m_core_frac: f64,
    /// First-stall residual accessibility links over the accessibility
    /// graph's link count.
    pub ds_core_frac: f64,
    /// Mean of the two.
    pub core_frac: f64,
}

fn ratio(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 / whole as f64
    }
}

impl CoreFractions {
    fn from_solution(sol: &Solution, links: usize, access_links: usize) -> Self {
        let m_core_frac = ratio(sol.m_core_size.unwrap_or(0), links);
        let ds_core_frac = ratio(sol.ds_core_size.unwrap_or(0), access_links);
        CoreFractions {
            m_core_frac,
            ds_core_frac,
            core_frac: (m_core_frac + ds_core_frac) / 2.0,
        }
    }
}

pub fn core_fraction(g: &DiGraph, ell: ChainBound, seed: u64) -> CoreFractions {
    let access = accessibility_graph(g, ell);
    let access_links = access.link_count();
    let sol = solve_with_access(g, access, ell, seed);
    CoreFractions::from_solution(&sol, g.link_count(), access_links)
}

/// Mean absolute degree difference over all ordered node pairs, scaled by
/// `c N^2` with `c = L/N`.
fn directional_heterogeneity(degrees: &mut [usize], c: f64) -> f64 {
    degrees.sort_unstable();
    let n = degrees.len();
    // in sorted order, k_i contributes +k_i to i pairs and -k_i to n-1-i pairs
    let sum: f64 = degrees
        .iter()
        .enumerate()
        .map(|(i, &k)| k as f64 * (2.0 * i as f64 - (n - 1) as f64))
        .sum();
    2.0 * sum / (c * (n * n) as f64)
}

/// Larger of the in- and out-degree heterogeneities.
pub fn heterogeneity(g: &DiGraph) -> Result<f64> {
    if g.link_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let c = g.link_count() as f64 / g.node_count() as f64;
    let h_in = directional_heterogeneity(&mut g.in_degrees(), c);
    let h_out = directional_heterogeneity(&mut g.out_degrees(), c);
    Ok(h_in.max(h_out))
}

/// Heuristic excess over the brute-force optimum, as a fraction of `N`.
pub fn delta(g: &DiGraph, ell: ChainBound, seed: u64) -> Result<f64> {
    let exact = brute_force_min_inputs(g, ell)?.n_inputs;
    let approx = crate::solve_heuristic(g, ell, seed).n_inputs;
    Ok(ratio(approx - exact, g.node_count()))
}

/// Same with branch and bound as the exact side. `None` when the node limit
/// stopped the search before optimality was proven.
pub fn delta_bnb(g: &DiGraph, ell: ChainBound, seed: u64, node_limit: u64) -> Option<f64> {
    let exact = branch_and_bound(g, ell, node_limit);
    let approx = crate::solve_heuristic(g, ell, seed).n_inputs;
    exact
        .optimal
        .then(|| ratio(approx - exact.solution.n_inputs, g.node_count()))
}

pub const CSV_HEADER: &str = "model,n,c,gamma,ell,seed,n_i_frac,cost,m_core_frac,ds_core_frac,core_frac,H,delta";

/// One row of an ensemble experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRecord {
    /// Generator name or input file tag.
    pub model: String,
    pub n: usize,
    pub c: f64,
    pub gamma: Option<f64>,
    pub ell: ChainBound,
    pub seed: u64,
    pub n_i_frac: f64,
    pub cost: f64,
    pub m_core_frac: f64,
    pub ds_core_frac: f64,
    pub core_frac: f64,
    #[serde(rename = "H")]
    pub heterogeneity: Option<f64>,
    pub delta: Option<f64>,
}

impl ExperimentRecord {
    /// Measures everything for one instance. `exact_node_limit` enables the
    /// branch-and-bound gap.
    pub fn measure(
        model: &str,
        gamma: Option<f64>,
        g: &DiGraph,
        ell: ChainBound,
        seed: u64,
        exact_node_limit: Option<u64>,
    ) -> Self {
        let n = g.node_count();
        let access = accessibility_graph(g, ell);
        let access_links = access.link_count();
        let sol = solve_with_access(g, access, ell, seed);
        let cores = CoreFractions::from_solution(&sol, g.link_count(), access_links);
        let free = if ell == ChainBound::Unbounded {
            sol.n_inputs
        } else {
            crate::solve_heuristic(g, ChainBound::Unbounded, seed).n_inputs
        };
        let delta = exact_node_limit.and_then(|limit| {
            let exact = branch_and_bound(g, ell, limit);
            exact.optimal.then(|| ratio(sol.n_inputs - exact.solution.n_inputs, n))
        });
        ExperimentRecord {
            model: model.to_string(),
            n,
            c: ratio(g.link_count(), n),
            gamma,
            ell,
            seed,
            n_i_frac: ratio(sol.n_inputs, n),
            cost: (sol.n_inputs as f64 - free as f64) / n.max(1) as f64,
            m_core_frac: cores.m_core_frac,
            ds_core_frac: cores.ds_core_frac,
            core_frac: cores.core_frac,
            heterogeneity: heterogeneity(g).ok(),
            delta,
        }
    }

    /// Row matching [`CSV_HEADER`]; absent values are empty fields.
    pub fn csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        let mut row = String::new();
        let _ = write!(
            row,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.model,
            self.n,
            self.c,
            opt(self.gamma),
            self.ell,
            self.seed,
            self.n_i_frac,
            self.cost,
            self.m_core_frac,
            self.ds_core_frac,
            self.core_frac,
            opt(self.heterogeneity),
            opt(self.delta),
        );
        row
    }
}

/// Header plus one line per record.
pub fn to_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn chain_cost() {
        let g = DiGraph::chain(9);
        assert_abs_diff_eq!(cost(&g, ChainBound::Steps(2), 0), 2.0 / 9.0, epsilon = 1e-12);
        assert_eq!(cost(&g, ChainBound::Steps(8), 0), 0.0);
        assert_eq!(cost(&DiGraph::new(5), ChainBound::Steps(1), 0), 0.0);
    }

    #[test]
    fn chain_has_no_core() {
        for ell in [1, 2, 5] {
            let f = core_fraction(&DiGraph::chain(9), ChainBound::Steps(ell), 0);
            assert_eq!((f.m_core_frac, f.ds_core_frac, f.core_frac), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn cycle_core_lives_in_the_domination_side() {
        let f = core_fraction(&DiGraph::cycle(3), ChainBound::Steps(1), 0);
        assert_eq!(f.m_core_frac, 0.0);
        assert_eq!(f.ds_core_frac, 1.0);
        assert_eq!(f.core_frac, 0.5);
    }

    #[test]
    fn heterogeneity_examples() {
        assert_eq!(heterogeneity(&DiGraph::cycle(5)).unwrap(), 0.0);
        assert_abs_diff_eq!(heterogeneity(&DiGraph::star(4)).unwrap(), 1.5, epsilon = 1e-12);
        assert_eq!(heterogeneity(&DiGraph::new(3)), Err(Error::EmptyGraph));
    }

    #[test]
    fn chain_delta_is_zero() {
        for ell in 1..=4 {
            assert_eq!(delta(&DiGraph::chain(12), ChainBound::Steps(ell), 0).unwrap(), 0.0);
        }
        assert!(delta(&DiGraph::chain(20), ChainBound::Steps(1), 0).is_err());
        assert_eq!(
            delta_bnb(&DiGraph::chain(20), ChainBound::Steps(3), 0, 100_000),
            Some(0.0)
        );
    }

    #[test]
    fn csv_row_shape() {
        let r = ExperimentRecord::measure("chain", None, &DiGraph::chain(9), ChainBound::Steps(2), 3, Some(1000));
        let row = r.csv_row();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("chain,9,0.8888888888888888,,2,3,"));
        assert!(row.ends_with(",0"));
        assert!(to_csv(&[r]).starts_with(CSV_HEADER));
    }
}
