// Minimum inputs under a chain budget with the coupled heuristic, its bounds
// and an independent validity check.
//
//     cargo run --example solve

use lcc_control::generators::GenSpec;
use lcc_control::{bounds, solve_heuristic, verify_input_set, ChainBound};

/// Returns the input counts for ell = 1, 2, 3 and unbounded.
pub fn run_example() -> Vec<usize> {
    let g = GenSpec::sf(500, 3.0, 2.5, 4).generate().expect("valid parameters");
    let mut counts = Vec::new();
    for ell in [
        ChainBound::Steps(1),
        ChainBound::Steps(2),
        ChainBound::Steps(3),
        ChainBound::Unbounded,
    ] {
        let sol = solve_heuristic(&g, ell, 4);
        let b = bounds(&g, ell);
        assert!(verify_input_set(&g, ell, &sol.inputs));
        println!(
            "ell={ell:>3}: {:>3} inputs in [{}, {}], core-free: {}",
            sol.n_inputs,
            b.lower,
            b.upper,
            sol.core_free()
        );
        counts.push(sol.n_inputs);
    }
    counts
}

#[allow(dead_code)]
fn main() {
    run_example();
}
