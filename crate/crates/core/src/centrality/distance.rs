use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{NodeId, WeightedDigraph};
use crate::scores::ScoreVector;

/// How edge weights turn into lengths for shortest paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMode {
    Hop,
    #[default]
    InverseWeight,
}

impl DistanceMode {
    fn length(self, w: f64) -> f64 {
        match self {
            DistanceMode::Hop => 1.0,
            DistanceMode::InverseWeight => 1.0 / w,
        }
    }
}

impl std::str::FromStr for DistanceMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "hop" => Ok(DistanceMode::Hop),
            "inverse-weight" | "inverse" => Ok(DistanceMode::InverseWeight),
            _ => Err(crate::Error::InvalidArgument(format!(
                "unknown distance mode `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetweennessKind {
    /// Number of shortest paths through the node.
    Absolute,
    /// Shares of shortest paths through the node.
    Relative,
}

#[derive(PartialEq)]
struct Entry(f64, NodeId);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source shortest-path DAG.
struct Sssp {
    dist: Vec<f64>,
    sigma: Vec<f64>,
    preds: Vec<Vec<NodeId>>,
    /// Settled nodes by nondecreasing distance.
    order: Vec<NodeId>,
}

fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

fn dijkstra(g: &WeightedDigraph, source: NodeId, mode: DistanceMode) -> Sssp {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0; n];
    let mut preds = vec![Vec::new(); n];
    let mut done = vec![false; n];
    let mut order = Vec::new();
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    sigma[source] = 1.0;
    heap.push(Entry(0.0, source));
    while let Some(Entry(d, v)) = heap.pop() {
        if done[v] || d > dist[v] {
            continue;
        }
        done[v] = true;
        order.push(v);
        for &(w, weight) in g.out_edges(v) {
            if done[w] {
                continue;
            }
            let nd = d + mode.length(weight);
            if dist[w].is_finite() && same_length(nd, dist[w]) {
                sigma[w] += sigma[v];
                preds[w].push(v);
            } else if nd < dist[w] {
                dist[w] = nd;
                sigma[w] = sigma[v];
                preds[w] = vec![v];
                heap.push(Entry(nd, w));
            }
        }
    }
    Sssp {
        dist,
        sigma,
        preds,
        order,
    }
}

/// `C_i = sum_{j != i} 1 / d_ij`, unreachable nodes contributing 0.
pub fn harmonic_closeness(g: &WeightedDigraph, mode: DistanceMode) -> ScoreVector {
    let scores = g
        .nodes()
        .into_par_iter()
        .map(|i| {
            dijkstra(g, i, mode)
                .dist
                .iter()
                .enumerate()
                .filter(|&(j, d)| j != i && d.is_finite())
                .map(|(_, d)| 1.0 / d)
                .sum()
        })
        .collect();
    ScoreVector::new("closeness", scores)
}

/// Shortest-path betweenness with endpoints excluded.
pub fn betweenness(g: &WeightedDigraph, kind: BetweennessKind, mode: DistanceMode) -> ScoreVector {
    let n = g.node_count();
    let total = g
        .nodes()
        .into_par_iter()
        .map(|s| {
            let sp = dijkstra(g, s, mode);
            let mut acc = vec![0.0; n];
            // below[v]: shortest s-paths continuing past v, counted per s-v path
            // (absolute) or as the fraction of s-t paths through v (relative)
            let mut below = vec![0.0; n];
            for &w in sp.order.iter().rev() {
                for &v in &sp.preds[w] {
                    let share = match kind {
                        BetweennessKind::Absolute => 1.0 + below[w],
                        BetweennessKind::Relative => sp.sigma[v] / sp.sigma[w] * (1.0 + below[w]),
                    };
                    below[v] += share;
                }
                if w != s {
                    acc[w] += match kind {
                        BetweennessKind::Absolute => sp.sigma[w] * below[w],
                        BetweennessKind::Relative => below[w],
                    };
                }
            }
            acc
        })
        .reduce(
            || vec![0.0; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let name = match kind {
        BetweennessKind::Absolute => "betweenness",
        BetweennessKind::Relative => "relative-betweenness",
    };
    ScoreVector::new(name, total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_closeness_and_betweenness() {
        let g = WeightedDigraph::from_edges(&[("a", "b", 1.0), ("b", "c", 1.0)]).unwrap();
        assert_eq!(
            harmonic_closeness(&g, DistanceMode::Hop).scores,
            vec![1.5, 1.0, 0.0]
        );
        let b = betweenness(&g, BetweennessKind::Absolute, DistanceMode::Hop);
        assert_eq!(b.scores, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn two_routes_split_relative_share() {
        let g = WeightedDigraph::from_edges(&[
            ("a", "b1", 1.0),
            ("a", "b2", 1.0),
            ("b1", "c", 1.0),
            ("b2", "c", 1.0),
        ])
        .unwrap();
        let r = betweenness(&g, BetweennessKind::Relative, DistanceMode::Hop);
        assert_eq!(r[g.node_index("b1").unwrap()], 0.5);
        let a = betweenness(&g, BetweennessKind::Absolute, DistanceMode::Hop);
        assert_eq!(a[g.node_index("b1").unwrap()], 1.0);
    }

    #[test]
    fn bidirectional_star() {
        let n = 6;
        let mut edges = Vec::new();
        for k in 1..n {
            edges.push(("c".to_string(), format!("s{k}"), 1.0));
            edges.push((format!("s{k}"), "c".to_string(), 1.0));
        }
        let g = WeightedDigraph::from_edges(&edges).unwrap();
        let b = betweenness(&g, BetweennessKind::Absolute, DistanceMode::Hop);
        assert_eq!(b[0], ((n - 1) * (n - 2)) as f64);
    }

    #[test]
    fn inverse_weight_prefers_strong_ties() {
        let g = WeightedDigraph::from_edges(&[("a", "b", 10.0), ("b", "c", 10.0), ("a", "c", 1.0)])
            .unwrap();
        let b = betweenness(&g, BetweennessKind::Absolute, DistanceMode::InverseWeight);
        assert_eq!(b[1], 1.0);
        let h = betweenness(&g, BetweennessKind::Absolute, DistanceMode::Hop);
        assert_eq!(h[1], 0.0);
    }

    #[test]
    fn complete_digraph_closeness() {
        let labels = ["a", "b", "c", "d"];
        let mut edges = Vec::new();
        for x in labels {
            for y in labels {
                if x != y {
                    edges.push((x, y, 2.0));
                }
            }
        }
        let g = WeightedDigraph::from_edges(&edges).unwrap();
        assert!(harmonic_closeness(&g, DistanceMode::Hop)
            .scores
            .iter()
            .all(|&c| c == 3.0));
    }
}
