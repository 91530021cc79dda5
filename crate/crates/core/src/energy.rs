//! Control energy of linear dynamics `x' = A x + B u`.
//!
//! `A[j][i]` holds the weight of link `i -> j`, and every input drives
//! exactly one node, so each column of `B` is a unit vector. The finite-time
//! controllability Gramian is integrated with composite Simpson quadrature
//! because `A` need not be stable.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::io::LinkWeights;
use crate::graph::{diameter, ChainBound, DiGraph, InputSet};
use crate::matching::hopcroft_karp::{Matcher, NONE};
use crate::{Error, Result};

pub type DenseMatrix = DMatrix<f64>;
pub type DenseVector = DVector<f64>;

/// Default number of Simpson panels.
pub const DEFAULT_STEPS: usize = 200;

pub fn expm(m: &DenseMatrix) -> Result<DenseMatrix> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.exp())
}

/// Weighted adjacency with `A[j][i] = w(i -> j)`; missing weights are 1.
pub fn adjacency_matrix(g: &DiGraph, weights: Option<&LinkWeights>) -> DenseMatrix {
    let n = g.node_count();
    let mut a = DenseMatrix::zeros(n, n);
    for (t, h) in g.links() {
        a[(h, t)] = weights.and_then(|w| w.get(&(t, h)).copied()).unwrap_or(1.0);
    }
    a
}

/// `n x |inputs|` matrix with a unit entry at each input's row.
pub fn input_matrix(n: usize, inputs: &InputSet) -> DenseMatrix {
    let mut b = DenseMatrix::zeros(n, inputs.len());
    for (col, v) in inputs.iter().enumerate() {
        b[(v, col)] = 1.0;
    }
    b
}

#[derive(Clone, Debug, PartialEq)]
pub struct ControlSetup {
    pub a: DenseMatrix,
    pub b: DenseMatrix,
    pub t_f: f64,
    pub x0: DenseVector,
    pub xf: DenseVector,
}

impl ControlSetup {
    /// Steering from the origin to the origin; set the states with
    /// [`ControlSetup::with_states`].
    pub fn new(a: DenseMatrix, b: DenseMatrix, t_f: f64) -> Result<Self> {
        let n = a.nrows();
        if !a.is_square() {
            return Err(Error::NonSquare {
                rows: n,
                cols: a.ncols(),
            });
        }
        if b.nrows() != n {
            return Err(Error::Dimension(format!("B has {} rows, A has {n}", b.nrows())));
        }
        for (k, col) in b.column_iter().enumerate() {
            let nonzero: Vec<f64> = col.iter().copied().filter(|&x| x != 0.0).collect();
            if nonzero != [1.0] {
                return Err(Error::Dimension(format!("column {k} of B is not a unit vector")));
            }
        }
        if !(t_f.is_finite() && t_f > 0.0) {
            return Err(Error::Precondition(format!("control time {t_f} must be positive")));
        }
        Ok(ControlSetup {
            a,
            b,
            t_f,
            x0: DenseVector::zeros(n),
            xf: DenseVector::zeros(n),
        })
    }

    pub fn with_states(mut self, x0: DenseVector, xf: DenseVector) -> Result<Self> {
        let n = self.a.nrows();
        if x0.len() != n || xf.len() != n {
            return Err(Error::Dimension(format!("states must have length {n}")));
        }
        self.x0 = x0;
        self.xf = xf;
        Ok(self)
    }
}

/// Composite Simpson nodes and weights on `[0, t_f]` with `panels` panels.
fn simpson_nodes(t_f: f64, panels: usize) -> Vec<(f64, f64)> {
    let panels = panels.max(1);
    let h = t_f / panels as f64;
    (0..=2 * panels)
        .map(|j| {
            let w = match j {
                0 => 1.0,
                j if j == 2 * panels => 1.0,
                j if j % 2 == 1 => 4.0,
                _ => 2.0,
            };
            (j as f64 * h / 2.0, w * h / 6.0)
        })
        .collect()
}

fn symmetrize(w: DenseMatrix) -> DenseMatrix {
    (&w + w.transpose()) * 0.5
}

/// `W = int_0^t_f e^(A s) B B^T e^(A^T s) ds`.
pub fn gramian(setup: &ControlSetup, steps: usize) -> DenseMatrix {
    let n = setup.a.nrows();
    let mut w = DenseMatrix::zeros(n, n);
    for (s, weight) in simpson_nodes(setup.t_f, steps) {
        let eb = (&setup.a * s).exp() * &setup.b;
        w += (&eb * eb.transpose()) * weight;
    }
    symmetrize(w)
}

/// Single-input Gramians `W_i` for every node, so that the Gramian of any
/// input set is the sum over its members.
#[derive(Clone, Debug)]
pub struct NodeGramians {
    per_node: Vec<DenseMatrix>,
}

impl NodeGramians {
    pub fn new(a: &DenseMatrix, t_f: f64, steps: usize) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NonSquare {
                rows: a.nrows(),
                cols: a.ncols(),
            });
        }
        let n = a.nrows();
        let mut per_node = vec![DenseMatrix::zeros(n, n); n];
        for (s, weight) in simpson_nodes(t_f, steps) {
            let e = (a * s).exp();
            for (i, w) in per_node.iter_mut().enumerate() {
                let col = e.column(i);
                w.ger(weight, &col, &col, 1.0);
            }
        }
        Ok(NodeGramians {
            per_node: per_node.into_iter().map(symmetrize).collect(),
        })
    }

    pub fn for_inputs(&self, inputs: &InputSet) -> DenseMatrix {
        let n = self.per_node.len();
        inputs
            .iter()
            .fold(DenseMatrix::zeros(n, n), |acc, v| acc + &self.per_node[v])
    }
}

/// Mean control energy `tr(W^-1)`. A Gramian whose smallest eigenvalue is
/// within rounding of zero relative to its largest counts as singular.
pub fn mean_energy(w: &DenseMatrix) -> Result<f64> {
    if !w.is_square() {
        return Err(Error::NonSquare {
            rows: w.nrows(),
            cols: w.ncols(),
        });
    }
    // numerical rank test: eigenvalues below n * eps * max are noise
    let eigen = w.symmetric_eigenvalues();
    let top = eigen.max();
    if top.is_nan() || top <= 0.0 || eigen.min() <= w.nrows() as f64 * f64::EPSILON * top {
        return Err(Error::SingularGramian);
    }
    let chol = w.clone().cholesky().ok_or(Error::SingularGramian)?;
    let trace = chol.inverse().trace();
    if trace.is_finite() && trace > 0.0 {
        Ok(trace)
    } else {
        Err(Error::SingularGramian)
    }
}

/// Minimum-energy control steering `x0` to `xf` in time `t_f`.
#[derive(Clone, Debug)]
pub struct OptimalControl {
    setup: ControlSetup,
    /// `W^-1 (xf - e^(A t_f) x0)`.
    costate: DenseVector,
}

impl OptimalControl {
    pub fn new(setup: ControlSetup, steps: usize) -> Result<Self> {
        let w = gramian(&setup, steps);
        mean_energy(&w)?;
        let chol = w.cholesky().ok_or(Error::SingularGramian)?;
        let drift = (&setup.a * setup.t_f).exp() * &setup.x0;
        let costate = chol.solve(&(&setup.xf - drift));
        Ok(OptimalControl { setup, costate })
    }

    /// `u(t) = B^T e^(A^T (t_f - t)) W^-1 (xf - e^(A t_f) x0)`.
    pub fn signal(&self, t: f64) -> Result<DenseVector> {
        if !(0.0..=self.setup.t_f).contains(&t) {
            return Err(Error::Precondition(format!("t = {t} outside [0, {}]", self.setup.t_f)));
        }
        let back = (self.setup.a.transpose() * (self.setup.t_f - t)).exp();
        Ok(self.setup.b.transpose() * back * &self.costate)
    }

    /// Final state of fixed-step RK4 integration under the optimal signal.
    pub fn simulate(&self, steps: usize) -> DenseVector {
        let s = &self.setup;
        let h = s.t_f / steps as f64;
        let u = |t: f64| self.signal(t.clamp(0.0, s.t_f)).expect("clamped time");
        let f = |t: f64, x: &DenseVector| &s.a * x + &s.b * u(t);
        let mut x = s.x0.clone();
        for k in 0..steps {
            let t = k as f64 * h;
            let k1 = f(t, &x);
            let k2 = f(t + h / 2.0, &(&x + &k1 * (h / 2.0)));
            let k3 = f(t + h / 2.0, &(&x + &k2 * (h / 2.0)));
            let k4 = f(t + h, &(&x + &k3 * h));
            x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        }
        x
    }

    /// `int_0^t_f u^T u dt` by Simpson quadrature.
    pub fn energy(&self, steps: usize) -> f64 {
        simpson_nodes(self.setup.t_f, steps)
            .into_iter()
            .map(|(t, w)| w * self.signal(t).expect("node inside horizon").norm_squared())
            .sum()
    }
}

/// Optimal signal at time `t`.
pub fn optimal_signal(setup: &ControlSetup, t: f64) -> Result<DenseVector> {
    if !(0.0..=setup.t_f).contains(&t) {
        return Err(Error::Precondition(format!("t = {t} outside [0, {}]", setup.t_f)));
    }
    OptimalControl::new(setup.clone(), DEFAULT_STEPS)?.signal(t)
}

/// Smallest chain budget whose heuristic input count fits into `m`, with
/// that input set.
pub fn lcc_placement(g: &DiGraph, m: usize) -> Result<(ChainBound, InputSet)> {
    let top = diameter(g).max(1);
    for ell in 1..=top {
        let sol = crate::solve_heuristic(g, ChainBound::Steps(ell), 0);
        if sol.n_inputs <= m {
            return Ok((ChainBound::Steps(ell), sol.inputs));
        }
    }
    Err(Error::Precondition(format!("{m} inputs cannot control the graph")))
}

/// Unmatched nodes of a maximum matching found on randomly ordered
/// adjacency lists.
fn random_driver_nodes<R: Rng>(g: &DiGraph, rng: &mut R) -> InputSet {
    let n = g.node_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let adj: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| {
            let mut preds = g.predecessors(v).to_vec();
            preds.shuffle(rng);
            preds
        })
        .collect();
    let mut matcher = Matcher::new(&adj, n);
    matcher.maximize(&|_| true);
    (0..n)
        .filter(|&k| matcher.mate_left[k] == NONE)
        .map(|k| order[k])
        .collect()
}

fn fill_randomly<R: Rng>(base: &InputSet, n: usize, m: usize, rng: &mut R) -> InputSet {
    let rest: Vec<usize> = (0..n).filter(|&v| !base.contains(v)).collect();
    let extra = rest.choose_multiple(rng, m.saturating_sub(base.len()));
    base.iter().chain(extra.copied()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Chain-budget placement plus random extras.
    Lcc,
    /// Matching-based driver nodes plus random extras.
    Random,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Lcc => "lcc",
            Strategy::Random => "random",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyRow {
    pub m: usize,
    pub strategy: Strategy,
    /// Geometric mean of `tr(W^-1)` over non-singular trials.
    pub geomean_energy: Option<f64>,
    pub singular_count: usize,
}

#[derive(Clone, Debug)]
pub struct EnergyConfig {
    pub trials: usize,
    pub seed: u64,
    pub t_f: f64,
    pub steps: usize,
}

impl Default for EnergyConfig {
    fn default() -> Self {
        EnergyConfig {
            trials: 50,
            seed: 0,
            t_f: 1.0,
            steps: DEFAULT_STEPS,
        }
    }
}

pub const ENERGY_CSV_HEADER: &str = "m,strategy,geomean_energy,singular_count";

fn geomean(energies: &[f64]) -> Option<f64> {
    if energies.is_empty() {
        return None;
    }
    Some((energies.iter().map(|e| e.ln()).sum::<f64>() / energies.len() as f64).exp())
}

/// Compares chain-budget placement with matching-based placement for each
/// input count in `ms`. Both strategies redraw their random parts every
/// trial; singular Gramians are counted and left out of the mean.
pub fn energy_comparison(
    g: &DiGraph,
    weights: Option<&LinkWeights>,
    ms: &[usize],
    cfg: &EnergyConfig,
) -> Result<Vec<EnergyRow>> {
    let n = g.node_count();
    if let Some(&m) = ms.iter().find(|&&m| m > n) {
        return Err(Error::Precondition(format!("m = {m} exceeds the node count {n}")));
    }
    let basis = NodeGramians::new(&adjacency_matrix(g, weights), cfg.t_f, cfg.steps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::with_capacity(2 * ms.len());
    for &m in ms {
        let (_, placed) = lcc_placement(g, m)?;
        for strategy in [Strategy::Lcc, Strategy::Random] {
            let mut energies = Vec::with_capacity(cfg.trials);
            let mut singular_count = 0;
            for _ in 0..cfg.trials {
                let base = match strategy {
                    Strategy::Lcc => placed.clone(),
                    Strategy::Random => random_driver_nodes(g, &mut rng),
                };
                let inputs = fill_randomly(&base, n, m, &mut rng);
                match mean_energy(&basis.for_inputs(&inputs)) {
                    Ok(e) => energies.push(e),
                    Err(_) => singular_count += 1,
                }
            }
            rows.push(EnergyRow {
                m,
                strategy,
                geomean_energy: geomean(&energies),
                singular_count,
            });
        }
    }
    Ok(rows)
}

pub fn energy_csv(rows: &[EnergyRow]) -> String {
    let mut out = format!("{ENERGY_CSV_HEADER}\n");
    for r in rows {
        let e = r.geomean_energy.map(|e| format!("{e:e}")).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{}", r.m, r.strategy.name(), e, r.singular_count);
    }
    out
}
