use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};

pub const MYERSON_CAP: usize = 15;

/// Total weight of edges with both endpoints in `members` (a bitmask).
pub fn internal_weight(g: &WeightedDigraph, members: u32) -> f64 {
    g.edges()
        .iter()
        .filter(|e| members >> e.source & 1 == 1 && members >> e.target & 1 == 1)
        .map(|e| e.weight)
        .sum()
}

fn check(g: &WeightedDigraph) -> Result<usize> {
    let n = g.node_count();
    if n > MYERSON_CAP {
        return Err(Error::Capacity(format!(
            "Myerson value enumerates 2^N subsets; N = {n} exceeds {MYERSON_CAP}"
        )));
    }
    Ok(n)
}

/// Weights `(|S|-1)! (N-|S|)! / N!` indexed by `|S|`.
fn coefficients(n: usize) -> Vec<f64> {
    let fact: Vec<f64> = (0..=n)
        .scan(1.0, |f, k| {
            if k > 0 {
                *f *= k as f64;
            }
            Some(*f)
        })
        .collect();
    (0..=n)
        .map(|s| {
            if s == 0 {
                0.0
            } else {
                fact[s - 1] * fact[n - s] / fact[n]
            }
        })
        .collect()
}

/// Average marginal contribution of `node` over all subsets containing it.
/// `value` receives node subsets as bitmasks.
pub fn myerson_value(
    g: &WeightedDigraph,
    value: impl Fn(&WeightedDigraph, u32) -> f64,
    node: NodeId,
) -> Result<f64> {
    let n = check(g)?;
    if node >= n {
        return Err(Error::InvalidArgument(format!(
            "node index {node} out of range"
        )));
    }
    let coef = coefficients(n);
    let bit = 1u32 << node;
    let mut total = 0.0;
    for s in 0..(1u32 << n) {
        if s & bit != 0 {
            total += coef[s.count_ones() as usize] * (value(g, s) - value(g, s & !bit));
        }
    }
    Ok(total)
}

/// Values for every node, evaluating `value` once per subset.
pub fn myerson_values(
    g: &WeightedDigraph,
    value: impl Fn(&WeightedDigraph, u32) -> f64,
) -> Result<Vec<f64>> {
    let n = check(g)?;
    let v: Vec<f64> = (0..(1u32 << n)).map(|s| value(g, s)).collect();
    let coef = coefficients(n);
    Ok((0..n)
        .map(|i| {
            let bit = 1u32 << i;
            (0..(1u32 << n))
                .filter(|s| s & bit != 0)
                .map(|s| coef[s.count_ones() as usize] * (v[s as usize] - v[(s & !bit) as usize]))
                .sum()
        })
        .collect())
}
