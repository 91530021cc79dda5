mod common;

use approx::assert_relative_eq;
use lcc_control::energy::{
    adjacency_matrix, gramian, input_matrix, mean_energy, ControlSetup, NodeGramians, OptimalControl, DEFAULT_STEPS,
};
use lcc_control::{DiGraph, InputSet};
use rand::Rng;

use common::{gnp, rng};

/// Rank of the Kalman matrix `[B, AB, ..., A^(n-1) B]` for unit link weights,
/// in exact integer arithmetic.
fn kalman_rank(g: &DiGraph, inputs: &InputSet) -> usize {
    let n = g.node_count();
    let mut cols: Vec<Vec<i128>> = Vec::new();
    for v in inputs.iter() {
        let mut x = vec![0i128; n];
        x[v] = 1;
        for _ in 0..n {
            let mut next = vec![0i128; n];
            for (t, h) in g.links() {
                next[h] += x[t];
            }
            cols.push(std::mem::replace(&mut x, next));
        }
    }
    let mut rank = 0;
    for row in 0..n {
        let Some(p) = (rank..cols.len()).find(|&c| cols[c][row] != 0) else {
            continue;
        };
        cols.swap(rank, p);
        let pivot = cols[rank].clone();
        for c in cols.iter_mut().skip(rank + 1) {
            let f = c[row];
            if f != 0 {
                for (x, &y) in c.iter_mut().zip(&pivot) {
                    *x = *x * pivot[row] - f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn gramian_invertibility_matches_kalman_rank() {
    let mut r = rng(21);
    let mut seen = [0usize; 2];
    for _ in 0..300 {
        let n = r.gen_range(1..=6);
        let g = gnp(n, 0.3, &mut r);
        let inputs = InputSet::new((0..n).filter(|_| r.gen_bool(0.3)));
        if inputs.is_empty() {
            continue;
        }
        let setup = ControlSetup::new(adjacency_matrix(&g, None), input_matrix(n, &inputs), 1.0).unwrap();
        let invertible = mean_energy(&gramian(&setup, DEFAULT_STEPS)).is_ok();
        let controllable = kalman_rank(&g, &inputs) == n;
        assert_eq!(invertible, controllable, "{g:?} {inputs:?}");
        seen[usize::from(controllable)] += 1;
    }
    assert!(seen[0] > 20 && seen[1] > 20, "{seen:?}");
}

#[test]
fn extra_input_never_raises_energy() {
    let mut r = rng(22);
    for _ in 0..100 {
        let n = r.gen_range(2..=8);
        let g = gnp(n, 0.3, &mut r);
        let basis = NodeGramians::new(&adjacency_matrix(&g, None), 1.0, DEFAULT_STEPS).unwrap();
        let mut inputs: Vec<usize> = Vec::new();
        let mut prev = f64::INFINITY;
        for v in 0..n {
            inputs.push(v);
            if let Ok(e) = mean_energy(&basis.for_inputs(&InputSet::new(inputs.iter().copied()))) {
                assert!(e <= prev * (1.0 + 1e-9), "{e} after {prev}");
                prev = e;
            }
        }
        assert!(prev.is_finite());
    }
}

#[test]
fn cached_gramians_match_direct_integration() {
    let mut r = rng(23);
    for _ in 0..30 {
        let n = r.gen_range(2..=7);
        let g = gnp(n, 0.35, &mut r);
        let a = adjacency_matrix(&g, None);
        let inputs = InputSet::new((0..n).filter(|_| r.gen_bool(0.5)));
        let cached = NodeGramians::new(&a, 0.7, 100).unwrap().for_inputs(&inputs);
        let direct = gramian(&ControlSetup::new(a, input_matrix(n, &inputs), 0.7).unwrap(), 100);
        assert_relative_eq!(cached, direct, epsilon = 1e-12, max_relative = 1e-10);
    }
}

#[test]
fn optimal_signal_energy_equals_gramian_form() {
    let g = DiGraph::chain(4);
    let inputs = InputSet::new([0, 2]);
    let x0 = nalgebra::DVector::from_vec(vec![0.5, -1.0, 0.0, 2.0]);
    let xf = nalgebra::DVector::from_vec(vec![1.0, 0.0, -1.0, 1.0]);
    let setup = ControlSetup::new(adjacency_matrix(&g, None), input_matrix(4, &inputs), 1.0)
        .unwrap()
        .with_states(x0.clone(), xf.clone())
        .unwrap();
    let w = gramian(&setup, DEFAULT_STEPS);
    let d = &xf - (&setup.a * 1.0).exp() * &x0;
    let expected = d.dot(&(w.clone().cholesky().unwrap().solve(&d)));
    let control = OptimalControl::new(setup, DEFAULT_STEPS).unwrap();
    assert_relative_eq!(control.energy(DEFAULT_STEPS), expected, max_relative = 1e-8);
    assert_relative_eq!(control.simulate(400), xf, epsilon = 1e-8);
}
