//! Rankings and rank correlation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::scores::ScoreVector;

pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranking {
    /// Nodes by descending score, ties by index.
    pub order: Vec<NodeId>,
    /// 1-based rank per node; tied nodes share the average rank.
    pub ranks: Vec<f64>,
    pub tie_groups: Vec<Vec<NodeId>>,
}

impl Ranking {
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

pub fn to_ranking(v: &ScoreVector) -> Ranking {
    ranking_of(&v.scores)
}

pub fn ranking_of(scores: &[f64]) -> Ranking {
    let n = scores.len();
    let mut order: Vec<NodeId> = (0..n).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let mut ranks = vec![0.0; n];
    let mut tie_groups = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (scores[order[start]] - scores[order[end]]).abs() <= TIE_TOLERANCE {
            end += 1;
        }
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        tie_groups.push(order[start..end].to_vec());
        start = end;
    }
    Ranking {
        order,
        ranks,
        tie_groups,
    }
}

fn check(a: &Ranking, b: &Ranking) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "rankings have {} and {} nodes",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// Pairs tied within each run of equal keys.
fn tied_pairs<T: PartialEq>(sorted: &[T]) -> u64 {
    let mut total = 0u64;
    let mut run = 1u64;
    for k in 1..=sorted.len() {
        if k < sorted.len() && sorted[k] == sorted[k - 1] {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total
}

/// Sorts `v` and returns its inversion count.
fn merge_count(v: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = merge_count(&mut v[..mid]) + merge_count(&mut v[mid..]);
    let mut merged = Vec::with_capacity(n);
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if v[j] < v[i] {
            swaps += (mid - i) as u64;
            merged.push(v[j]);
            j += 1;
        } else {
            merged.push(v[i]);
            i += 1;
        }
    }
    merged.extend_from_slice(&v[i..mid]);
    merged.extend_from_slice(&v[j..n]);
    v.copy_from_slice(&merged);
    swaps
}

/// Pair counts `(n0, n1, n2, n3, discordant)`: all pairs, pairs tied in
/// `a`, tied in `b`, tied in both, discordant.
fn pair_counts(a: &Ranking, b: &Ranking) -> (u64, u64, u64, u64, u64) {
    let n = a.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&x, &y| {
        a.ranks[x]
            .total_cmp(&a.ranks[y])
            .then(b.ranks[x].total_cmp(&b.ranks[y]))
    });
    let ar: Vec<f64> = idx.iter().map(|&i| a.ranks[i]).collect();
    let pairs: Vec<(f64, f64)> = idx.iter().map(|&i| (a.ranks[i], b.ranks[i])).collect();
    let n1 = tied_pairs(&ar);
    let n3 = tied_pairs(&pairs);
    let mut br: Vec<f64> = idx.iter().map(|&i| b.ranks[i]).collect();
    let swaps = merge_count(&mut br);
    let n2 = tied_pairs(&br);
    let n0 = n as u64 * (n as u64).saturating_sub(1) / 2;
    (n0, n1, n2, n3, swaps)
}

/// Kendall's tau-b.
pub fn kendall_tau(a: &Ranking, b: &Ranking) -> Result<f64> {
    check(a, b)?;
    let (n0, n1, n2, n3, s) = pair_counts(a, b);
    let num = n0 as f64 - n1 as f64 - n2 as f64 + n3 as f64 - 2.0 * s as f64;
    let den = ((n0 - n1) as f64 * (n0 - n2) as f64).sqrt();
    if den == 0.0 {
        return Err(Error::Undefined(
            "tau-b is undefined when one ranking is all ties".into(),
        ));
    }
    Ok(num / den)
}

/// Goodman-Kruskal gamma, `(N_S - N_D) / (N_S + N_D)` over pairs untied in
/// both rankings.
pub fn gk_gamma(a: &Ranking, b: &Ranking) -> Result<f64> {
    check(a, b)?;
    let (n0, n1, n2, n3, s) = pair_counts(a, b);
    let untied = n0 + n3 - n1 - n2;
    if untied == 0 {
        return Err(Error::Undefined(
            "gamma is undefined when every pair is tied".into(),
        ));
    }
    Ok((untied as f64 - 2.0 * s as f64) / untied as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranking_order_and_ties() {
        let r = ranking_of(&[3.0, 1.0, 2.0]);
        assert_eq!(r.order, vec![0, 2, 1]);
        assert_eq!(r.ranks, vec![1.0, 3.0, 2.0]);
        let t = ranking_of(&[5.0; 4]);
        assert_eq!(t.tie_groups.len(), 1);
        assert!(t.ranks.iter().all(|&x| x == 2.5));
    }

    #[test]
    fn identity_and_reversal() {
        let a = ranking_of(&[1.0, 2.0, 3.0, 4.0]);
        let b = ranking_of(&[4.0, 3.0, 2.0, 1.0]);
        assert_eq!(kendall_tau(&a, &a).unwrap(), 1.0);
        assert_eq!(kendall_tau(&a, &b).unwrap(), -1.0);
        assert_eq!(gk_gamma(&a, &a).unwrap(), 1.0);
        assert_eq!(gk_gamma(&a, &b).unwrap(), -1.0);
    }

    #[test]
    fn ties_are_excluded_from_gamma() {
        let a = ranking_of(&[1.0, 2.0, 3.0]);
        let b = ranking_of(&[1.0, 1.0, 3.0]);
        // pairs (0,2), (1,2) concordant, (0,1) tied in b
        assert_eq!(gk_gamma(&a, &b).unwrap(), 1.0);
        let tau = kendall_tau(&a, &b).unwrap();
        assert!((tau - 2.0 / 6f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        let a = ranking_of(&[1.0, 1.0]);
        assert!(gk_gamma(&a, &a).is_err());
        assert!(kendall_tau(&a, &ranking_of(&[1.0])).is_err());
    }
}
