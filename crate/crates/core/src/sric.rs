//! Short-range interaction centrality.
//!
//! For each target node the in-neighbours that are pivotal in some critical
//! group accrue the group's intensity (their direct share plus the
//! one-hop indirect shares routed through other group members), discounted
//! by the group size. Per-target influences are normalised, averaged over
//! targets, and normalised again.

use serde::Serialize;

use crate::coalitions::{EnumerationLimits, InNeighborhood};
use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};
use crate::quota::ThresholdConfig;
use crate::scores::ScoreVector;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntensityBundle {
    pub target: NodeId,
    pub direct: Vec<(NodeId, f64)>,
    /// `((j, y), p)` for influence of `j` on the target through `y`.
    pub indirect: Vec<((NodeId, NodeId), f64)>,
}

/// `w_ji / sum_k w_ki` for every in-neighbour `j`; empty when the target
/// has no in-edges.
pub fn direct_intensity(g: &WeightedDigraph, target: NodeId) -> Vec<(NodeId, f64)> {
    let total = g.in_strength(target);
    if total <= 0.0 {
        return Vec::new();
    }
    g.in_edges(target)
        .iter()
        .map(|&(j, w)| (j, w / total))
        .collect()
}

/// Influence of `j` on `target` routed through `y`.
///
/// `w_jy / S` when `w_yi > 0` and `w_jy < w_yi`, `w_yi / S` when
/// `w_yi > 0` and `w_jy > w_yi`, otherwise 0 (including the equal case).
/// `S` is the in-strength of the target.
pub fn indirect_intensity(g: &WeightedDigraph, target: NodeId, j: NodeId, y: NodeId) -> f64 {
    if j == y || y == target || j == target {
        return 0.0;
    }
    let total = g.in_strength(target);
    let w_yi = g.weight(y, target);
    let w_jy = g.weight(j, y);
    if total <= 0.0 || w_yi <= 0.0 {
        0.0
    } else if w_jy < w_yi {
        w_jy / total
    } else if w_jy > w_yi {
        w_yi / total
    } else {
        0.0
    }
}

pub fn intensity_bundle(g: &WeightedDigraph, target: NodeId) -> IntensityBundle {
    let direct = direct_intensity(g, target);
    let mut indirect = Vec::new();
    for &(y, _) in g.in_edges(target) {
        for &(j, _) in g.in_edges(y) {
            let p = indirect_intensity(g, target, j, y);
            if p > 0.0 {
                indirect.push(((j, y), p));
            }
        }
    }
    indirect.sort_by_key(|&(k, _)| k);
    IntensityBundle {
        target,
        direct,
        indirect,
    }
}

/// How per-target influence vectors are weighted when summed.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum TargetWeights {
    #[default]
    Uniform,
    /// Named node attribute; every node must carry it.
    Attribute(String),
}

#[derive(Debug, Clone, Default)]
pub struct SricOptions {
    pub limits: EnumerationLimits,
    pub target_weights: TargetWeights,
}

/// Normalised influence of every node on `target` (zeros when the target has
/// no critical group).
pub fn target_influence(
    g: &WeightedDigraph,
    cfg: &ThresholdConfig,
    target: NodeId,
    limits: &EnumerationLimits,
) -> Result<Vec<f64>> {
    let n = g.node_count();
    let mut acc = vec![0.0; n];
    let quota = cfg.resolve(g, target);
    if quota.unreachable || g.in_edges(target).is_empty() {
        return Ok(acc);
    }
    let nb = InNeighborhood::new(g, target, quota.value);
    let total_in = g.in_strength(target);
    nb.for_each_with_pivotal(limits, |group, _, pivotal| {
        let size = group.len() as f64;
        for &pj in pivotal {
            let j = nb.members[pj];
            let mut intensity = nb.weights[pj] / total_in;
            for &py in group {
                if py != pj {
                    intensity += indirect_intensity(g, target, j, nb.members[py]);
                }
            }
            acc[j] += intensity / size;
        }
    })?;
    let z: f64 = acc.iter().sum();
    if z > 0.0 {
        acc.iter_mut().for_each(|a| *a /= z);
    }
    Ok(acc)
}

pub fn sric_index(
    g: &WeightedDigraph,
    cfg: &ThresholdConfig,
    opts: &SricOptions,
) -> Result<ScoreVector> {
    let n = g.node_count();
    let weights: Vec<f64> = match &opts.target_weights {
        TargetWeights::Uniform => vec![1.0; n],
        TargetWeights::Attribute(name) => g
            .nodes()
            .map(|i| {
                g.attribute(i, name).ok_or_else(|| {
                    Error::InvalidArgument(format!("node {} has no attribute `{name}`", g.label(i)))
                })
            })
            .collect::<Result<_>>()?,
    };
    let per_target: Vec<Vec<f64>> = {
        use rayon::prelude::*;
        (0..n)
            .into_par_iter()
            .map(|t| target_influence(g, cfg, t, &opts.limits))
            .collect::<Result<_>>()?
    };
    let mut total = vec![0.0; n];
    for (t, infl) in per_target.iter().enumerate() {
        for (j, v) in infl.iter().enumerate() {
            total[j] += weights[t] * v;
        }
    }
    let z: f64 = total.iter().sum();
    if z > 0.0 {
        total.iter_mut().for_each(|v| *v /= z);
    }
    Ok(ScoreVector::new("sric", total))
}
