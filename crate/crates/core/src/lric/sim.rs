//! Simulation-based long-range influence: threshold cascades from seed
//! coalitions and hit-rate estimates of node-to-node influence.

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Bound, InfluenceMatrix, MatrixKind};
use crate::coalitions::{EnumerationLimits, InNeighborhood};
use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};
use crate::quota::{meets_quota, ThresholdConfig};

pub const EXHAUSTIVE_CAP: usize = 20;
const CHUNK: usize = 4096;

/// Entry `(i, j)` is `min(w_ij / q_j, 1)`. The second value lists targets
/// whose quota is zero despite incoming edges; their entries are set to 1.
pub fn relative_influence_matrix(
    g: &WeightedDigraph,
    cfg: &ThresholdConfig,
) -> (InfluenceMatrix, Vec<NodeId>) {
    let mut m = InfluenceMatrix::zeros(g.node_count(), MatrixKind::Relative);
    let mut flagged = Vec::new();
    for j in g.nodes() {
        let q = cfg.resolve(g, j).value;
        let edges = g.in_edges(j);
        if !edges.is_empty() && q <= 0.0 {
            flagged.push(j);
        }
        for &(i, w) in edges {
            let v = if q > 0.0 { (w / q).min(1.0) } else { 1.0 };
            m.set(i, j, v);
        }
    }
    (m, flagged)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CascadeRun {
    pub seed: Vec<NodeId>,
    pub final_set: Vec<NodeId>,
    /// Nodes activated in each round.
    pub steps: Vec<Vec<NodeId>>,
    /// The step bound stopped a cascade that could still grow.
    pub truncated: bool,
}

/// Precomputed quotas and adjacency for repeated cascades on one graph.
pub struct CascadeEngine<'g> {
    g: &'g WeightedDigraph,
    quota: Vec<f64>,
    can_activate: Vec<bool>,
}

impl<'g> CascadeEngine<'g> {
    pub fn new(g: &'g WeightedDigraph, cfg: &ThresholdConfig) -> Self {
        let quota = g.nodes().map(|j| cfg.resolve(g, j).value).collect();
        let can_activate = g.nodes().map(|j| !g.in_edges(j).is_empty()).collect();
        CascadeEngine {
            g,
            quota,
            can_activate,
        }
    }

    /// Runs synchronous rounds from `active` (updated in place) and returns
    /// the per-round activations plus the truncation flag.
    pub fn run_in_place(&self, active: &mut [bool], max_steps: Bound) -> (Vec<Vec<NodeId>>, bool) {
        let g = self.g;
        let n = g.node_count();
        let mut inflow = vec![0.0; n];
        let mut frontier: Vec<NodeId> = (0..n).filter(|&i| active[i]).collect();
        let mut steps = Vec::new();
        let mut touched = vec![false; n];
        loop {
            let mut candidates = Vec::new();
            for &i in &frontier {
                for &(j, w) in g.out_edges(i) {
                    inflow[j] += w;
                    if !active[j] && !touched[j] {
                        touched[j] = true;
                        candidates.push(j);
                    }
                }
            }
            let mut next: Vec<NodeId> = candidates
                .iter()
                .copied()
                .filter(|&j| self.can_activate[j] && meets_quota(inflow[j], self.quota[j]))
                .collect();
            candidates.iter().for_each(|&j| touched[j] = false);
            if next.is_empty() {
                return (steps, false);
            }
            if !max_steps.allows(steps.len() + 1) {
                return (steps, true);
            }
            next.sort_unstable();
            for &j in &next {
                active[j] = true;
            }
            steps.push(next.clone());
            frontier = next;
        }
    }

    pub fn cascade(&self, seed: &[NodeId], max_steps: Bound) -> Result<CascadeRun> {
        let n = self.g.node_count();
        if seed.is_empty() {
            return Err(Error::InvalidArgument("seed must be nonempty".into()));
        }
        let mut active = vec![false; n];
        for &s in seed {
            if s >= n {
                return Err(Error::InvalidArgument(format!(
                    "node index {s} out of range"
                )));
            }
            active[s] = true;
        }
        let (steps, truncated) = self.run_in_place(&mut active, max_steps);
        let mut seed = seed.to_vec();
        seed.sort_unstable();
        seed.dedup();
        Ok(CascadeRun {
            seed,
            final_set: (0..n).filter(|&i| active[i]).collect(),
            steps,
            truncated,
        })
    }
}

pub fn cascade(
    g: &WeightedDigraph,
    cfg: &ThresholdConfig,
    seed: &[NodeId],
    max_steps: Bound,
) -> Result<CascadeRun> {
    CascadeEngine::new(g, cfg).cascade(seed, max_steps)
}

#[derive(Debug, Clone, Serialize)]
pub struct SimConfig {
    pub max_steps: Bound,
    pub max_seed_size: Option<usize>,
    /// Monte-Carlo sample count; `None` means exhaustive enumeration.
    pub samples: Option<usize>,
    pub rng_seed: u64,
    pub exhaustive_cap: usize,
    #[serde(skip)]
    pub limits: EnumerationLimits,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            max_steps: Bound::Unbounded,
            max_seed_size: None,
            samples: None,
            rng_seed: 0,
            exhaustive_cap: EXHAUSTIVE_CAP,
            limits: EnumerationLimits::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimResult {
    pub matrix: InfluenceMatrix,
    pub hits: Vec<u64>,
    pub trials: Vec<u64>,
    pub seeds_evaluated: u64,
    /// Binomial standard error per entry (sampling mode only).
    pub standard_errors: Option<Vec<f64>>,
}

/// `eligible[j][i]`: `i` belongs to some minimal direct critical group of `j`.
fn eligibility(
    g: &WeightedDigraph,
    cfg: &ThresholdConfig,
    limits: &EnumerationLimits,
) -> Result<Vec<Vec<bool>>> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map(|j| {
            let mut row = vec![false; n];
            let q = cfg.resolve(g, j);
            if q.unreachable || g.in_edges(j).is_empty() {
                return Ok(row);
            }
            for c in InNeighborhood::new(g, j, q.value).minimal(limits)? {
                for i in c.members {
                    row[i] = true;
                }
            }
            Ok(row)
        })
        .collect()
}

struct Tally {
    hits: Vec<u64>,
    trials: Vec<u64>,
    seeds: u64,
}

impl Tally {
    fn new(n: usize) -> Self {
        Tally {
            hits: vec![0; n * n],
            trials: vec![0; n * n],
            seeds: 0,
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.hits
            .iter_mut()
            .zip(&other.hits)
            .for_each(|(a, b)| *a += b);
        self.trials
            .iter_mut()
            .zip(&other.trials)
            .for_each(|(a, b)| *a += b);
        self.seeds += other.seeds;
        self
    }

    fn record(&mut self, seed: &[bool], active: &[bool], eligible: &[Vec<bool>]) {
        let n = seed.len();
        self.seeds += 1;
        for i in (0..n).filter(|&i| seed[i]) {
            for j in (0..n).filter(|&j| !seed[j]) {
                self.trials[i * n + j] += 1;
                if active[j] && eligible[j][i] {
                    self.hits[i * n + j] += 1;
                }
            }
        }
    }
}

/// Estimates `c*_ij`: among seeds containing `i` but not `j`, the share whose
/// cascade reaches `j`, counted only when `i` is in a minimal direct critical
/// group of `j`.
pub fn sim_influence_matrix(
    g: &WeightedDigraph,
    cfg: &ThresholdConfig,
    sim: &SimConfig,
) -> Result<SimResult> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidGraph(
            "simulation needs at least two nodes".into(),
        ));
    }
    let max_seed = sim.max_seed_size.unwrap_or(n - 1).min(n - 1);
    if max_seed == 0 {
        return Err(Error::InvalidArgument(
            "maximum seed size must be positive".into(),
        ));
    }
    let eligible = eligibility(g, cfg, &sim.limits)?;
    let engine = CascadeEngine::new(g, cfg);
    let run = |seed: &[bool], tally: &mut Tally, active: &mut Vec<bool>| {
        active.clear();
        active.extend_from_slice(seed);
        engine.run_in_place(active, sim.max_steps);
        tally.record(seed, active, &eligible);
    };

    let tally = match sim.samples {
        None => {
            if n > sim.exhaustive_cap.min(63) {
                return Err(Error::Capacity(format!(
                    "exhaustive simulation is limited to {} nodes; use sampling",
                    sim.exhaustive_cap.min(63)
                )));
            }
            let full: u64 = (1u64 << n) - 1;
            let chunks = full.div_ceil(CHUNK as u64);
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut tally = Tally::new(n);
                    let mut seed = vec![false; n];
                    let mut active = Vec::with_capacity(n);
                    let lo = (c * CHUNK as u64).max(1);
                    let hi = ((c + 1) * CHUNK as u64).min(full);
                    for mask in lo..hi {
                        if mask.count_ones() as usize > max_seed {
                            continue;
                        }
                        for (i, s) in seed.iter_mut().enumerate() {
                            *s = mask >> i & 1 == 1;
                        }
                        run(&seed, &mut tally, &mut active);
                    }
                    tally
                })
                .reduce(|| Tally::new(n), Tally::merge)
        }
        Some(k) => {
            if k == 0 {
                return Err(Error::InvalidArgument(
                    "sample count must be positive".into(),
                ));
            }
            let sizes = size_distribution(n, max_seed)?;
            let chunks = k.div_ceil(CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(sim.rng_seed);
                    rng.set_stream(c as u64);
                    let mut tally = Tally::new(n);
                    let mut seed = vec![false; n];
                    let mut active = Vec::with_capacity(n);
                    let count = CHUNK.min(k - c * CHUNK);
                    for _ in 0..count {
                        let size = sizes.sample(&mut rng) + 1;
                        seed.iter_mut().for_each(|s| *s = false);
                        for i in rand::seq::index::sample(&mut rng, n, size) {
                            seed[i] = true;
                        }
                        run(&seed, &mut tally, &mut active);
                    }
                    tally
                })
                .reduce(|| Tally::new(n), Tally::merge)
        }
    };

    let mut matrix = InfluenceMatrix::zeros(n, MatrixKind::Total);
    matrix.bound = Some(sim.max_steps);
    let mut se = vec![0.0; n * n];
    for (idx, err) in se.iter_mut().enumerate() {
        if tally.trials[idx] > 0 {
            let p = tally.hits[idx] as f64 / tally.trials[idx] as f64;
            matrix.set(idx / n, idx % n, p);
            *err = (p * (1.0 - p) / tally.trials[idx] as f64).sqrt();
        }
    }
    Ok(SimResult {
        matrix,
        hits: tally.hits,
        trials: tally.trials,
        seeds_evaluated: tally.seeds,
        standard_errors: sim.samples.map(|_| se),
    })
}

/// Seed sizes `1..=max_seed` weighted by `C(n, k)`, so that sampled seeds are
/// uniform over all admissible subsets. Index `k - 1` holds size `k`.
fn size_distribution(n: usize, max_seed: usize) -> Result<WeightedIndex<f64>> {
    let mut ln = Vec::with_capacity(max_seed);
    let mut acc = 0.0;
    for k in 1..=max_seed {
        acc += ((n - k + 1) as f64).ln() - (k as f64).ln();
        ln.push(acc);
    }
    let top = ln.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    WeightedIndex::new(ln.iter().map(|l| (l - top).exp()))
        .map_err(|e| Error::Numerical(e.to_string()))
}

/// Same aggregation as the path-based vector.
pub fn sim_influence_vector(
    cstar: &InfluenceMatrix,
    weights: &[f64],
) -> Result<crate::scores::ScoreVector> {
    let mut v = super::influence_vector(cstar, weights)?;
    v.measure = "lric-sim".into();
    Ok(v)
}
