// Exact minima by enumeration and by branch and bound, against the heuristic.
//
//     cargo run --example exact

use lcc_control::exact::{branch_and_bound, brute_force_min_inputs};
use lcc_control::generators::GenSpec;
use lcc_control::{solve_heuristic, ChainBound};

/// Returns (heuristic, enumeration, branch and bound) on a 14-node graph,
/// plus the branch-and-bound optimum on a 120-node graph.
pub fn run_example() -> (usize, usize, usize, usize) {
    let ell = ChainBound::Steps(2);
    let small = GenSpec::er(14, 2.5, 8).generate().expect("valid parameters");
    let h = solve_heuristic(&small, ell, 0).n_inputs;
    let brute = brute_force_min_inputs(&small, ell).expect("small enough").n_inputs;
    let bnb = branch_and_bound(&small, ell, 1_000_000);
    println!(
        "n=14: heuristic {h}, enumeration {brute}, branch and bound {}",
        bnb.solution.n_inputs
    );

    let big = GenSpec::sf(120, 2.0, 3.0, 8).generate().expect("valid parameters");
    let out = branch_and_bound(&big, ell, 10_000_000);
    println!(
        "n=120: heuristic {}, branch and bound {} after {} nodes (proven: {})",
        solve_heuristic(&big, ell, 0).n_inputs,
        out.solution.n_inputs,
        out.explored,
        out.optimal
    );
    (h, brute, bnb.solution.n_inputs, out.solution.n_inputs)
}

#[allow(dead_code)]
fn main() {
    run_example();
}
