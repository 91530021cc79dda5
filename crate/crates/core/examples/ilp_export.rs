// Both integer programs in LP format, solved in-process and checked.
//
//     cargo run --example ilp_export

use lcc_control::exact::{build_ilp_cycling, build_ilp_naive, write_lp};
use lcc_control::{ChainBound, DiGraph};

/// Returns the optima of the naive and the cycling model for a 6-cycle.
pub fn run_example() -> (i64, i64) {
    let g = DiGraph::cycle(6);
    let ell = ChainBound::Steps(1);
    let naive = build_ilp_naive(&g, ell);
    let cycling = build_ilp_cycling(&g, ell);
    print!("{}", write_lp(&naive));
    let a = naive.solve_small().expect("always feasible");
    let b = cycling.solve_small().expect("always feasible");
    assert!(naive.is_feasible(&a.assignment) && cycling.is_feasible(&b.assignment));
    println!("optimum: naive {}, cycling {}", a.value, b.value);
    (a.value, b.value)
}

#[allow(dead_code)]
fn main() {
    run_example();
}
