//! Critical groups of in-neighbours, their pivotal members, and the
//! inclusion-minimal critical groups.
//!
//! A group `S` of in-neighbours of `target` is critical when the weight it
//! sends to `target` meets the quota: `sum_{l in S} w(l, target) >= q`. A
//! member is pivotal when dropping it makes the group non-critical.
//!
//! Enumeration walks combinations of the in-neighbourhood by size and then
//! lexicographically, pruning branches that cannot reach the quota. A
//! member `j` of a critical group with total `t` is pivotal iff
//! `w_j > t - q`, so the minimum member weight decides whether every member
//! is pivotal.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};
use crate::quota::{meets_quota, ThresholdConfig};

/// Default maximum in-degree enumerated without a group-size bound.
pub const DEFAULT_ENUMERATION_CAP: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_in_degree: usize,
    pub max_group_size: Option<usize>,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_in_degree: DEFAULT_ENUMERATION_CAP,
            max_group_size: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Coalition {
    /// Ascending node indices.
    pub members: Vec<NodeId>,
    pub total_weight: f64,
}

impl Coalition {
    pub fn contains(&self, node: NodeId) -> bool {
        self.members.binary_search(&node).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoalitionReport {
    pub target: NodeId,
    pub quota: f64,
    pub critical_groups: Vec<Coalition>,
    /// Parallel to `critical_groups`.
    pub pivotal_sets: Vec<Vec<NodeId>>,
    pub minimal_direct_critical: Vec<Coalition>,
}

/// In-neighbourhood of one target in ascending node order.
#[derive(Debug, Clone)]
pub(crate) struct InNeighborhood {
    pub members: Vec<NodeId>,
    pub weights: Vec<f64>,
    pub quota: f64,
}

impl InNeighborhood {
    pub fn new(g: &WeightedDigraph, target: NodeId, quota: f64) -> Self {
        let (members, weights) = g.in_edges(target).iter().copied().unzip();
        InNeighborhood {
            members,
            weights,
            quota,
        }
    }

    fn check(&self, limits: &EnumerationLimits) -> Result<usize> {
        let n = self.members.len();
        if n > 0 && (self.quota.is_nan() || self.quota <= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "quota must be positive, got {}",
                self.quota
            )));
        }
        match limits.max_group_size {
            Some(k) => Ok(k.min(n)),
            None if n > limits.max_in_degree => Err(Error::Capacity(format!(
                "in-degree {n} exceeds the enumeration cap {}; set a maximum group size",
                limits.max_in_degree
            ))),
            None => Ok(n),
        }
    }

    /// Calls `visit(local_indices, total, min_weight)` for every critical
    /// group up to `max_size`, ordered by size and then lexicographically.
    /// With `minimal_only`, branches whose prefix is already critical are cut.
    fn for_each_critical(
        &self,
        max_size: usize,
        minimal_only: bool,
        mut visit: impl FnMut(&[usize], f64, f64),
    ) {
        let n = self.weights.len();
        // best[p][r]: largest total of r weights chosen from positions p..n
        let mut best = vec![vec![0.0; n + 1]; n + 1];
        for p in (0..n).rev() {
            let mut suffix: Vec<f64> = self.weights[p..].to_vec();
            suffix.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let mut acc = 0.0;
            for (r, w) in suffix.iter().enumerate() {
                acc += w;
                best[p][r + 1] = acc;
            }
        }
        let mut stack = Vec::with_capacity(max_size);
        for k in 1..=max_size {
            self.combos(
                k,
                0,
                0.0,
                f64::INFINITY,
                &best,
                minimal_only,
                &mut stack,
                &mut visit,
            );
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn combos(
        &self,
        k: usize,
        start: usize,
        sum: f64,
        min_w: f64,
        best: &[Vec<f64>],
        minimal_only: bool,
        stack: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize], f64, f64),
    ) {
        let need = k - stack.len();
        if need == 0 {
            if meets_quota(sum, self.quota) {
                visit(stack, sum, min_w);
            }
            return;
        }
        let n = self.weights.len();
        if minimal_only && !stack.is_empty() && meets_quota(sum, self.quota) {
            return;
        }
        for p in start..=(n - need) {
            if !meets_quota(sum + best[p][need], self.quota) {
                // later positions only see a subset of these weights
                break;
            }
            stack.push(p);
            let w = self.weights[p];
            self.combos(
                k,
                p + 1,
                sum + w,
                min_w.min(w),
                best,
                minimal_only,
                stack,
                visit,
            );
            stack.pop();
        }
    }

    fn coalition(&self, local: &[usize], total: f64) -> Coalition {
        Coalition {
            members: local.iter().map(|&p| self.members[p]).collect(),
            total_weight: total,
        }
    }

    pub fn critical(&self, limits: &EnumerationLimits) -> Result<Vec<Coalition>> {
        let k = self.check(limits)?;
        let mut out = Vec::new();
        self.for_each_critical(k, false, |s, t, _| out.push(self.coalition(s, t)));
        Ok(out)
    }

    pub fn minimal(&self, limits: &EnumerationLimits) -> Result<Vec<Coalition>> {
        let k = self.check(limits)?;
        let mut out = Vec::new();
        let q = self.quota;
        self.for_each_critical(k, true, |s, t, min_w| {
            if !meets_quota(t - min_w, q) {
                out.push(self.coalition(s, t));
            }
        });
        Ok(out)
    }

    /// For each local member, the smallest total of a critical group in
    /// which it is pivotal (`None` when it is pivotal nowhere).
    pub fn min_pivotal_totals(&self, limits: &EnumerationLimits) -> Result<Vec<Option<f64>>> {
        let k = self.check(limits)?;
        let mut best: Vec<Option<f64>> = vec![None; self.members.len()];
        let q = self.quota;
        let weights = &self.weights;
        self.for_each_critical(k, false, |s, t, _| {
            for &p in s {
                if !meets_quota(t - weights[p], q) {
                    let slot = &mut best[p];
                    *slot = Some(slot.map_or(t, |b: f64| b.min(t)));
                }
            }
        });
        Ok(best)
    }

    /// Visits each critical group with the local indices of its pivotal members.
    pub fn for_each_with_pivotal(
        &self,
        limits: &EnumerationLimits,
        mut visit: impl FnMut(&[usize], f64, &[usize]),
    ) -> Result<()> {
        let k = self.check(limits)?;
        let q = self.quota;
        let weights = &self.weights;
        let mut piv = Vec::new();
        self.for_each_critical(k, false, |s, t, _| {
            piv.clear();
            piv.extend(
                s.iter()
                    .copied()
                    .filter(|&p| !meets_quota(t - weights[p], q)),
            );
            visit(s, t, &piv);
        });
        Ok(())
    }
}

/// All critical groups of in-neighbours of `target` under quota `q`.
pub fn critical_groups(
    g: &WeightedDigraph,
    target: NodeId,
    q: f64,
    limits: &EnumerationLimits,
) -> Result<Vec<Coalition>> {
    InNeighborhood::new(g, target, q).critical(limits)
}

/// Members of a critical `group` whose removal breaks criticality.
pub fn pivotal_members(
    g: &WeightedDigraph,
    target: NodeId,
    group: &Coalition,
    q: f64,
) -> Result<Vec<NodeId>> {
    let mut total = 0.0;
    for &m in &group.members {
        let w = g.weight(m, target);
        if w <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "node {m} is not an in-neighbour of {target}"
            )));
        }
        total += w;
    }
    if !meets_quota(total, q) {
        return Err(Error::InvalidArgument(format!(
            "group {:?} is not critical: weight {total} below quota {q}",
            group.members
        )));
    }
    Ok(group
        .members
        .iter()
        .copied()
        .filter(|&m| !meets_quota(total - g.weight(m, target), q))
        .collect())
}

/// Critical groups in which every member is pivotal.
pub fn minimal_direct_critical_groups(
    g: &WeightedDigraph,
    target: NodeId,
    q: f64,
    limits: &EnumerationLimits,
) -> Result<Vec<Coalition>> {
    InNeighborhood::new(g, target, q).minimal(limits)
}

pub fn coalition_report(
    g: &WeightedDigraph,
    target: NodeId,
    cfg: &ThresholdConfig,
    limits: &EnumerationLimits,
) -> Result<CoalitionReport> {
    let q = cfg.resolve(g, target).value;
    let nb = InNeighborhood::new(g, target, q);
    let critical = nb.critical(limits)?;
    let pivotal_sets = critical
        .iter()
        .map(|c| pivotal_members(g, target, c, q))
        .collect::<Result<Vec<_>>>()?;
    let minimal = nb.minimal(limits)?;
    Ok(CoalitionReport {
        target,
        quota: q,
        critical_groups: critical,
        pivotal_sets,
        minimal_direct_critical: minimal,
    })
}
