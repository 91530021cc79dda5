// Control energy of chain-budget placement against matching-based placement
// on a directed chain.
//
//     cargo run --release --example energy

use lcc_control::energy::{energy_comparison, energy_csv, EnergyConfig, Strategy};
use lcc_control::DiGraph;

/// Returns (m, lcc energy, random energy) rows; `None` marks all-singular.
pub fn run_example() -> Vec<(usize, Option<f64>, Option<f64>)> {
    let g = DiGraph::chain(12);
    let ms = [3, 4, 6];
    let cfg = EnergyConfig {
        trials: 20,
        seed: 3,
        ..Default::default()
    };
    let rows = energy_comparison(&g, None, &ms, &cfg).expect("m within range");
    print!("{}", energy_csv(&rows));
    ms.iter()
        .map(|&m| {
            let get = |s| {
                rows.iter()
                    .find(|r| r.m == m && r.strategy == s)
                    .and_then(|r| r.geomean_energy)
            };
            (m, get(Strategy::Lcc), get(Strategy::Random))
        })
        .collect()
}

#[allow(dead_code)]
fn main() {
    run_example();
}
