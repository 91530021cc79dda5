//! Random graph models and degree-preserving randomization.
//!
//! All generators are deterministic in their seed (ChaCha8) and never emit
//! self-loops or duplicate links.

use std::collections::HashSet;
use std::fmt;

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::DiGraph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Er,
    Sf,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Er => "er",
            Model::Sf => "sf",
        })
    }
}

/// Parameters of one random graph. `c` is the mean degree `L/n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenSpec {
    pub model: Model,
    pub n: usize,
    pub c: f64,
    /// Degree exponent, scale-free only.
    pub gamma: Option<f64>,
    pub seed: u64,
    /// Scale-free only: give each node the same rank for in- and out-weight
    /// instead of independent ranks.
    pub correlated: bool,
}

impl GenSpec {
    pub fn er(n: usize, c: f64, seed: u64) -> Self {
        GenSpec {
            model: Model::Er,
            n,
            c,
            gamma: None,
            seed,
            correlated: false,
        }
    }

    pub fn sf(n: usize, c: f64, gamma: f64, seed: u64) -> Self {
        GenSpec {
            model: Model::Sf,
            n,
            c,
            gamma: Some(gamma),
            seed,
            correlated: false,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GenSpec { seed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if !(self.c.is_finite() && self.c >= 0.0) {
            return bad(format!("mean degree {} must be finite and non-negative", self.c));
        }
        let max_degree = (self.n - 1) as f64;
        match self.model {
            Model::Er if self.c > max_degree => bad(format!("c = {} exceeds n - 1 = {max_degree}", self.c)),
            Model::Er => Ok(()),
            Model::Sf => match self.gamma {
                Some(g) if g.is_finite() && g > 2.0 => {
                    // rejection sampling of distinct links needs headroom
                    if self.c > max_degree / 2.0 {
                        bad(format!("c = {} exceeds (n - 1)/2 for the scale-free model", self.c))
                    } else {
                        Ok(())
                    }
                }
                Some(g) => bad(format!("gamma = {g} must exceed 2")),
                None => bad("scale-free model needs gamma".into()),
            },
        }
    }

    pub fn generate(&self) -> Result<DiGraph> {
        match self.model {
            Model::Er => erdos_renyi(self),
            Model::Sf => scale_free(self),
        }
    }
}

/// Every ordered pair `(i, j)`, `i != j`, is a link with probability
/// `c/(n-1)`. Pairs are visited by geometric skips, so the cost is linear in
/// the number of links.
pub fn erdos_renyi(spec: &GenSpec) -> Result<DiGraph> {
    spec.validate()?;
    let n = spec.n;
    let mut g = DiGraph::new(n);
    if n < 2 || spec.c == 0.0 {
        return Ok(g);
    }
    let p = spec.c / (n - 1) as f64;
    let pairs = (n * (n - 1)) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let log_q = (1.0 - p).ln();
    let mut k: u64 = 0;
    loop {
        if p < 1.0 {
            let u: f64 = 1.0 - rng.gen::<f64>();
            let skip = (u.ln() / log_q).floor();
            if skip >= (pairs - k) as f64 {
                break;
            }
            k += skip as u64;
        }
        if k >= pairs {
            break;
        }
        let t = (k / (n as u64 - 1)) as usize;
        let r = (k % (n as u64 - 1)) as usize;
        let h = if r < t { r } else { r + 1 };
        g.add_link(t, h).expect("pair indices are in range");
        k += 1;
    }
    Ok(g)
}

/// Static scale-free model: node `i` has weight `(i+1)^(-1/(gamma-1))`.
/// Exactly `round(c n)` distinct links are drawn, each tail chosen by
/// out-weight and each head by in-weight, rejecting self-loops and repeats.
/// In-weights are assigned through an independent random permutation of
/// the nodes unless `correlated` is set.
pub fn scale_free(spec: &GenSpec) -> Result<DiGraph> {
    spec.validate()?;
    let n = spec.n;
    let gamma = spec.gamma.expect("validated");
    let target = (spec.c * n as f64).round() as usize;
    let mut g = DiGraph::new(n);
    if target == 0 {
        return Ok(g);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let alpha = 1.0 / (gamma - 1.0);
    let weights: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(-alpha)).collect();
    let mut in_rank: Vec<usize> = (0..n).collect();
    if !spec.correlated {
        in_rank.shuffle(&mut rng);
    }
    let in_weights: Vec<f64> = (0..n).map(|v| weights[in_rank[v]]).collect();
    let tails = WeightedIndex::new(&weights).expect("weights are positive");
    let heads = WeightedIndex::new(&in_weights).expect("weights are positive");
    while g.link_count() < target {
        let t = tails.sample(&mut rng);
        let h = heads.sample(&mut rng);
        if t != h {
            g.add_link(t, h).expect("sampled ids are in range");
        }
    }
    Ok(g)
}

/// Number of swap trials for a randomization with residual probability
/// `epsilon` of a link keeping its place: `floor(|E|/2 * ln(1/epsilon))`.
pub fn rewiring_trials(link_count: usize, epsilon: f64) -> u64 {
    (link_count as f64 / 2.0 * (1.0 / epsilon).ln()).floor() as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewireStats {
    pub trials: u64,
    pub accepted: u64,
}

/// Double-edge swaps `(a->b), (c->d)` to `(a->d), (c->b)`. A swap that would
/// create a self-loop or a duplicate link is skipped. In- and out-degrees of
/// every node are unchanged.
pub fn degree_preserving_randomize(g: &DiGraph, epsilon: f64, seed: u64) -> Result<(DiGraph, RewireStats)> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Precondition(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    let mut links: Vec<(usize, usize)> = g.links().collect();
    let trials = rewiring_trials(links.len(), epsilon);
    let mut stats = RewireStats { trials, accepted: 0 };
    if links.len() < 2 {
        return Ok((g.clone(), stats));
    }
    let mut present: HashSet<(usize, usize)> = links.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let i = rng.gen_range(0..links.len());
        let j = rng.gen_range(0..links.len());
        let ((a, b), (c, d)) = (links[i], links[j]);
        if i == j || a == d || c == b || present.contains(&(a, d)) || present.contains(&(c, b)) {
            continue;
        }
        present.remove(&(a, b));
        present.remove(&(c, d));
        present.insert((a, d));
        present.insert((c, b));
        links[i] = (a, d);
        links[j] = (c, b);
        stats.accepted += 1;
    }
    let out = DiGraph::from_links(g.node_count(), links, g.allows_self_loops())?;
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_mean_degree_concentrates() {
        let mean: f64 = (0..20)
            .map(|s| erdos_renyi(&GenSpec::er(1000, 4.0, s)).unwrap().link_count() as f64 / 1000.0)
            .sum::<f64>()
            / 20.0;
        assert!((3.8..=4.2).contains(&mean), "{mean}");
    }

    #[test]
    fn er_edge_cases() {
        assert_eq!(erdos_renyi(&GenSpec::er(50, 0.0, 1)).unwrap().link_count(), 0);
        assert_eq!(erdos_renyi(&GenSpec::er(5, 4.0, 1)).unwrap().link_count(), 20);
        assert_eq!(erdos_renyi(&GenSpec::er(1, 0.0, 1)).unwrap().node_count(), 1);
        assert!(erdos_renyi(&GenSpec::er(5, 4.5, 1)).is_err());
        assert!(erdos_renyi(&GenSpec::er(0, 1.0, 1)).is_err());
        let a = erdos_renyi(&GenSpec::er(200, 3.0, 9)).unwrap();
        assert_eq!(a, erdos_renyi(&GenSpec::er(200, 3.0, 9)).unwrap());
        assert_eq!(a.self_loop_count(), 0);
    }

    #[test]
    fn sf_link_count_and_determinism() {
        let spec = GenSpec::sf(500, 3.0, 2.5, 4);
        let g = scale_free(&spec).unwrap();
        assert_eq!(g.link_count(), 1500);
        assert_eq!(g.self_loop_count(), 0);
        assert_eq!(g, scale_free(&spec).unwrap());
        assert!(scale_free(&GenSpec::sf(10, 1.0, 2.0, 0)).is_err());
        assert!(scale_free(&GenSpec::sf(10, 5.0, 3.0, 0)).is_err());
    }

    #[test]
    fn trial_count() {
        assert_eq!(rewiring_trials(200, 1e-6), 1381);
        assert_eq!(rewiring_trials(0, 1e-6), 0);
    }

    #[test]
    fn randomize_preserves_degrees() {
        let g = erdos_renyi(&GenSpec::er(100, 3.0, 2)).unwrap();
        let (r, stats) = degree_preserving_randomize(&g, 1e-6, 5).unwrap();
        assert_eq!(r.in_degrees(), g.in_degrees());
        assert_eq!(r.out_degrees(), g.out_degrees());
        assert!(stats.accepted > 0);
        assert_ne!(r, g);
        assert_eq!(r.self_loop_count(), 0);
    }

    #[test]
    fn randomize_single_link() {
        let g = DiGraph::chain(2);
        let (r, _) = degree_preserving_randomize(&g, 1e-6, 0).unwrap();
        assert_eq!(r, g);
        assert!(degree_preserving_randomize(&g, 1.0, 0).is_err());
    }
}
