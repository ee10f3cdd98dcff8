//! Long-range interaction centrality: the path-based family and the
//! cascade-simulation variant, plus the pieces they share (influence
//! matrices, step/length bounds and matrix-to-vector aggregation).

pub mod paths;
pub mod sim;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};
use crate::scores::ScoreVector;

/// A path-length or step bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Limited(usize),
    Unbounded,
}

impl Bound {
    pub fn allows(self, k: usize) -> bool {
        match self {
            Bound::Limited(s) => k <= s,
            Bound::Unbounded => true,
        }
    }

    /// Concrete limit, using `fallback` when unbounded.
    pub fn or(self, fallback: usize) -> usize {
        match self {
            Bound::Limited(s) => s,
            Bound::Unbounded => fallback,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Limited(s) => write!(f, "{s}"),
            Bound::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unbounded" | "inf" | "none" => Ok(Bound::Unbounded),
            _ => s
                .parse()
                .map(Bound::Limited)
                .map_err(|_| Error::InvalidArgument(format!("bad bound `{s}`"))),
        }
    }
}

/// The five admissible path-influence / aggregation combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    SumPaths,
    MaxPath,
    MaxMin,
    MultT,
    MaxT,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::SumPaths,
        Variant::MaxPath,
        Variant::MaxMin,
        Variant::MultT,
        Variant::MaxT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::SumPaths => "SumPaths",
            Variant::MaxPath => "MaxPath",
            Variant::MaxMin => "MaxMin",
            Variant::MultT => "MultT",
            Variant::MaxT => "MaxT",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "sumpaths" | "sum" => Ok(Variant::SumPaths),
            "maxpath" => Ok(Variant::MaxPath),
            "maxmin" => Ok(Variant::MaxMin),
            "multt" => Ok(Variant::MultT),
            "maxt" => Ok(Variant::MaxT),
            // min-influence summed over paths double counts shared bottlenecks
            "minsum" | "summin" => Err(Error::InvalidArgument(
                "min-influence with sum aggregation is not an admissible combination".into(),
            )),
            _ => Err(Error::InvalidArgument(format!("unknown variant `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    /// Direct influence from critical-group pivotality.
    Direct,
    /// Edge weight as a share of the target's quota.
    Relative,
    /// Node-to-node total influence.
    Total,
}

/// Dense `n x n` matrix of influences in `[0, 1]`, row = influencer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfluenceMatrix {
    pub n: usize,
    pub kind: MatrixKind,
    pub bound: Option<Bound>,
    pub variant: Option<Variant>,
    values: Vec<f64>,
}

impl InfluenceMatrix {
    pub fn zeros(n: usize, kind: MatrixKind) -> Self {
        InfluenceMatrix {
            n,
            kind,
            bound: None,
            variant: None,
            values: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>, kind: MatrixKind) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        Ok(InfluenceMatrix {
            n,
            kind,
            bound: None,
            variant: None,
            values: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, i: NodeId, j: NodeId) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn set(&mut self, i: NodeId, j: NodeId, v: f64) {
        self.values[i * self.n + j] = v;
    }

    pub fn row(&self, i: NodeId) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.n.max(1))
    }

    /// Nonzero entries of row `i` as `(column, value)`, ascending by column.
    pub fn successors(&self, i: NodeId) -> Vec<(NodeId, f64)> {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v > 0.0)
            .map(|(j, &v)| (j, v))
            .collect()
    }

    /// Every entry in `[0, 1]` and a zero diagonal.
    pub fn is_well_formed(&self) -> bool {
        self.values.iter().all(|v| (0.0..=1.0).contains(v))
            && (0..self.n).all(|i| self.get(i, i) == 0.0)
    }
}

/// Per-node aggregation weights used to collapse a matrix into a vector.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AggregationWeights {
    /// Share of total edge weight leaving each node.
    #[default]
    OutShare,
    Uniform,
    Attribute(String),
}

impl AggregationWeights {
    pub fn resolve(&self, g: &WeightedDigraph) -> Result<Vec<f64>> {
        match self {
            AggregationWeights::OutShare => Ok(node_weights_u(g)?.scores),
            AggregationWeights::Uniform => {
                let n = g.node_count();
                Ok(vec![1.0 / n as f64; n])
            }
            AggregationWeights::Attribute(name) => g
                .nodes()
                .map(|i| {
                    g.attribute(i, name).ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "node {} has no attribute `{name}`",
                            g.label(i)
                        ))
                    })
                })
                .collect(),
        }
    }
}

/// `u_i = out-strength(i) / total edge weight`.
pub fn node_weights_u(g: &WeightedDigraph) -> Result<ScoreVector> {
    let total = g.total_weight();
    if total <= 0.0 {
        return Err(Error::InvalidGraph(
            "node weights need at least one edge".into(),
        ));
    }
    Ok(ScoreVector::new(
        "out-share",
        g.nodes().map(|i| g.out_strength(i) / total).collect(),
    ))
}

/// `c = C* . u`.
pub fn influence_vector(cstar: &InfluenceMatrix, weights: &[f64]) -> Result<ScoreVector> {
    if weights.len() != cstar.n {
        return Err(Error::InvalidArgument(format!(
            "weight vector has {} entries for a {}-node matrix",
            weights.len(),
            cstar.n
        )));
    }
    let scores = cstar
        .rows()
        .take(cstar.n)
        .map(|row| row.iter().zip(weights).map(|(c, u)| c * u).sum())
        .collect();
    let name = match cstar.variant {
        Some(v) => format!("lric-{}", v.name().to_ascii_lowercase()),
        None => "lric".to_string(),
    };
    Ok(ScoreVector::new(name, scores))
}
