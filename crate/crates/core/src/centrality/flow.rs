use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::{NodeId, WeightedDigraph};
use crate::scores::ScoreVector;

const EPS: f64 = 1e-12;

struct Arc {
    to: usize,
    cap: f64,
}

/// Dinic's algorithm on a residual network.
struct Network {
    arcs: Vec<Arc>,
    head: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Network {
    fn new(g: &WeightedDigraph, removed: Option<NodeId>) -> Self {
        let n = g.node_count();
        let mut net = Network {
            arcs: Vec::new(),
            head: vec![Vec::new(); n],
            level: vec![0; n],
            next: vec![0; n],
        };
        for e in g.edges() {
            if Some(e.source) == removed || Some(e.target) == removed {
                continue;
            }
            net.head[e.source].push(net.arcs.len());
            net.arcs.push(Arc {
                to: e.target,
                cap: e.weight,
            });
            net.head[e.target].push(net.arcs.len());
            net.arcs.push(Arc {
                to: e.source,
                cap: 0.0,
            });
        }
        net
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.head[v] {
                let arc = &self.arcs[a];
                if arc.cap > EPS && self.level[arc.to] < 0 {
                    self.level[arc.to] = self.level[v] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn push(&mut self, v: usize, t: usize, f: f64) -> f64 {
        if v == t {
            return f;
        }
        while self.next[v] < self.head[v].len() {
            let a = self.head[v][self.next[v]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > EPS && self.level[to] == self.level[v] + 1 {
                let d = self.push(to, t, f.min(cap));
                if d > EPS {
                    self.arcs[a].cap -= d;
                    self.arcs[a ^ 1].cap += d;
                    return d;
                }
            }
            self.next[v] += 1;
        }
        0.0
    }

    fn max_flow(mut self, s: usize, t: usize) -> f64 {
        let mut total = 0.0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.push(s, t, f64::INFINITY);
                if f <= EPS {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Maximum `source -> sink` flow with edge weights as capacities, optionally
/// with one node (and its edges) deleted.
pub fn max_flow(g: &WeightedDigraph, source: NodeId, sink: NodeId, removed: Option<NodeId>) -> f64 {
    if source == sink || Some(source) == removed || Some(sink) == removed {
        return 0.0;
    }
    Network::new(g, removed).max_flow(source, sink)
}

/// `C_i = sum_{j != k != i} maxflow(j, k) - maxflow(j, k without i)`.
pub fn flow_betweenness(g: &WeightedDigraph) -> ScoreVector {
    let n = g.node_count();
    let base: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|j| (0..n).map(|k| max_flow(g, j, k, None)).collect())
        .collect();
    let scores = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = 0.0;
            for j in (0..n).filter(|&j| j != i) {
                for k in (0..n).filter(|&k| k != i && k != j) {
                    if base[j][k] > 0.0 {
                        acc += (base[j][k] - max_flow(g, j, k, Some(i))).max(0.0);
                    }
                }
            }
            acc
        })
        .collect();
    ScoreVector::new("flow-betweenness", scores)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_bottleneck() {
        let g = WeightedDigraph::from_edges(&[("a", "b", 4.0), ("b", "c", 7.0)]).unwrap();
        assert_eq!(max_flow(&g, 0, 2, None), 4.0);
        assert_eq!(max_flow(&g, 0, 2, Some(1)), 0.0);
        assert_eq!(flow_betweenness(&g).scores, vec![0.0, 4.0, 0.0]);
    }

    #[test]
    fn parallel_routes_add_up() {
        let g = WeightedDigraph::from_edges(&[
            ("s", "a", 3.0),
            ("a", "t", 2.0),
            ("s", "b", 1.0),
            ("b", "t", 5.0),
            ("a", "b", 4.0),
        ])
        .unwrap();
        assert_eq!(max_flow(&g, 0, 2, None), 4.0);
    }

    #[test]
    fn detached_node_scores_zero() {
        let g = WeightedDigraph::from_edges(&[("a", "b", 1.0), ("c", "d", 1.0)]).unwrap();
        assert_eq!(flow_betweenness(&g).scores, vec![0.0; 4]);
    }
}
