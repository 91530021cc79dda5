// Random graph models and degree-preserving randomization.
//
//     cargo run --example generators

use lcc_control::generators::{degree_preserving_randomize, GenSpec};
use lcc_control::metrics::heterogeneity;

/// Returns heterogeneity of (ER, SF) graphs with equal mean degree.
pub fn run_example() -> (f64, f64) {
    let er = GenSpec::er(5000, 4.0, 2).generate().expect("valid parameters");
    let sf = GenSpec::sf(5000, 4.0, 2.5, 2).generate().expect("valid parameters");
    let (h_er, h_sf) = (heterogeneity(&er).expect("links"), heterogeneity(&sf).expect("links"));
    println!("ER: {} links, H = {h_er:.3}", er.link_count());
    println!("SF: {} links, H = {h_sf:.3}", sf.link_count());
    let (shuffled, stats) = degree_preserving_randomize(&sf, 1e-6, 2).expect("epsilon in range");
    assert_eq!(shuffled.in_degrees(), sf.in_degrees());
    println!("randomized SF: {} of {} swaps accepted", stats.accepted, stats.trials);
    (h_er, h_sf)
}

#[allow(dead_code)]
fn main() {
    run_example();
}
