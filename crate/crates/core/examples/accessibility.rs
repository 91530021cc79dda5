// Accessibility graphs and control-chain lengths on a small chain.
//
//     cargo run --example accessibility

use lcc_control::graph::{accessibility_graph, lcc_length};
use lcc_control::{ChainBound, DiGraph, InputSet};

/// Returns (links of G_2, chain length from {0, 3, 6}).
pub fn run_example() -> (usize, Option<usize>) {
    let g = DiGraph::chain(9);
    let g2 = accessibility_graph(&g, ChainBound::Steps(2));
    for v in 0..3 {
        println!("G_2 successors of {v}: {:?}", g2.successors(v));
    }
    let chain = lcc_length(&g, &InputSet::new([0, 3, 6])).expect("non-empty inputs");
    println!("{} links in G_2, longest control chain {chain:?}", g2.link_count());
    (g2.link_count(), chain)
}

#[allow(dead_code)]
fn main() {
    run_example();
}
