// Maximum matchings of the bipartite representation: Hopcroft-Karp versus
// leaf removal, and the matching core left when no leaf remains.
//
//     cargo run --example matching

use lcc_control::generators::GenSpec;
use lcc_control::graph::bipartite_repr;
use lcc_control::matching::{hopcroft_karp, mlr};

/// Returns (driver nodes, leaf-removal core edges) for a sparse ER graph.
pub fn run_example() -> (usize, usize) {
    let g = GenSpec::er(2000, 2.0, 1).generate().expect("valid parameters");
    let b = bipartite_repr(&g);
    let maximum = hopcroft_karp(&b);
    let leaves = mlr(&b);
    let drivers = g.node_count() - maximum.len();
    println!("maximum matching {} links, {drivers} driver nodes", maximum.len());
    println!(
        "leaf removal matched {} links, core of {} edges",
        leaves.matching.len(),
        leaves.m_core_edges.len()
    );
    (drivers, leaves.m_core_edges.len())
}

#[allow(dead_code)]
fn main() {
    run_example();
}
