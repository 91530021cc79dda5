// Ensemble sweep over mean degree: input fraction, cost and core size per
// instance, written as CSV.
//
//     cargo run --release --example core_scan

use lcc_control::generators::GenSpec;
use lcc_control::metrics::{to_csv, ExperimentRecord};
use lcc_control::ChainBound;

/// Returns the CSV text.
pub fn run_example() -> String {
    let mut records = Vec::new();
    for c in [1.0, 2.0, 3.0, 4.0] {
        for seed in 0..3 {
            let g = GenSpec::er(300, c, seed).generate().expect("valid parameters");
            records.push(ExperimentRecord::measure(
                "er",
                None,
                &g,
                ChainBound::Steps(3),
                seed,
                Some(100_000),
            ));
        }
    }
    let csv = to_csv(&records);
    print!("{csv}");
    csv
}

#[allow(dead_code)]
fn main() {
    run_example();
}
