// Dominating-set leaf removal on an accessibility graph.
//
//     cargo run --example dominating

use lcc_control::dominating::{dslr, dslr_complete, is_dominating_set};
use lcc_control::graph::accessibility_graph;
use lcc_control::{ChainBound, DiGraph};

/// Returns the dominating set size of G_1 of a 12-node cycle with chords.
pub fn run_example() -> usize {
    let mut g = DiGraph::cycle(12);
    for v in (0..12).step_by(4) {
        g.add_link(v, (v + 6) % 12).expect("ids in range");
    }
    let g1 = accessibility_graph(&g, ChainBound::Steps(1));
    let partial = dslr(&g1);
    println!(
        "rules alone: {:?}, core of {} links",
        partial.dominating,
        partial.ds_core_links.len()
    );
    let full = dslr_complete(&g1);
    assert!(is_dominating_set(&g1, &full));
    println!("completed greedily: {full:?}");
    full.len()
}

#[allow(dead_code)]
fn main() {
    run_example();
}
