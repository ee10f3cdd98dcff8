use serde::Serialize;

use crate::graph::WeightedDigraph;
use crate::scores::ScoreVector;

/// Unweighted and weighted in/out/total/difference degrees.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeFamily {
    pub in_degree: ScoreVector,
    pub out_degree: ScoreVector,
    pub degree: ScoreVector,
    pub diff_degree: ScoreVector,
    pub weighted_in_degree: ScoreVector,
    pub weighted_out_degree: ScoreVector,
    pub weighted_degree: ScoreVector,
    pub weighted_diff_degree: ScoreVector,
}

impl DegreeFamily {
    pub fn all(&self) -> [&ScoreVector; 8] {
        [
            &self.in_degree,
            &self.out_degree,
            &self.degree,
            &self.diff_degree,
            &self.weighted_in_degree,
            &self.weighted_out_degree,
            &self.weighted_degree,
            &self.weighted_diff_degree,
        ]
    }
}

pub fn degree_family(g: &WeightedDigraph) -> DegreeFamily {
    let n = g.node_count();
    let ins: Vec<f64> = (0..n).map(|i| g.in_edges(i).len() as f64).collect();
    let outs: Vec<f64> = (0..n).map(|i| g.out_edges(i).len() as f64).collect();
    let w_in: Vec<f64> = (0..n).map(|i| g.in_strength(i)).collect();
    let w_out: Vec<f64> = (0..n).map(|i| g.out_strength(i)).collect();
    let zip = |a: &[f64], b: &[f64], f: fn(f64, f64) -> f64| -> Vec<f64> {
        a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
    };
    DegreeFamily {
        degree: ScoreVector::new("degree", zip(&ins, &outs, |i, o| i + o)),
        diff_degree: ScoreVector::new("diff-degree", zip(&ins, &outs, |i, o| o - i)),
        weighted_degree: ScoreVector::new("weighted-degree", zip(&w_in, &w_out, |i, o| i + o)),
        weighted_diff_degree: ScoreVector::new(
            "weighted-diff-degree",
            zip(&w_in, &w_out, |i, o| o - i),
        ),
        in_degree: ScoreVector::new("in-degree", ins),
        out_degree: ScoreVector::new("out-degree", outs),
        weighted_in_degree: ScoreVector::new("weighted-in-degree", w_in),
        weighted_out_degree: ScoreVector::new("weighted-out-degree", w_out),
    }
}
