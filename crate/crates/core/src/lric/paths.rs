//! Path-based long-range influence.

use rayon::prelude::*;
use serde::Serialize;

use super::{Bound, InfluenceMatrix, MatrixKind, Variant};
use crate::coalitions::{EnumerationLimits, InNeighborhood};
use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};
use crate::quota::ThresholdConfig;

pub const DEFAULT_PATH_CAP: usize = 1_000_000;
pub const DEFAULT_MAX_LEN: Bound = Bound::Limited(3);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplePath {
    pub nodes: Vec<NodeId>,
    pub edge_values: Vec<f64>,
}

impl SimplePath {
    pub fn len(&self) -> usize {
        self.edge_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PathMode {
    Multiply,
    Min,
}

/// Ordinal grades over `[0, 1]`; grade 0 is the worst.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradeScheme {
    boundaries: Vec<f64>,
}

impl Default for GradeScheme {
    fn default() -> Self {
        GradeScheme {
            boundaries: vec![0.2, 0.5, 0.7],
        }
    }
}

impl GradeScheme {
    pub fn new(boundaries: Vec<f64>) -> Result<Self> {
        let inside = boundaries.iter().all(|&b| b > 0.0 && b < 1.0);
        let increasing = boundaries.windows(2).all(|w| w[0] < w[1]);
        if !inside || !increasing {
            return Err(Error::InvalidArgument(
                "grade boundaries must be strictly increasing inside (0, 1)".into(),
            ));
        }
        Ok(GradeScheme { boundaries })
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// Number of grades `m`.
    pub fn grades(&self) -> usize {
        self.boundaries.len() + 1
    }

    pub fn grade(&self, value: f64) -> usize {
        self.boundaries.iter().take_while(|&&b| value >= b).count()
    }

    /// Edge counts per grade, worst first.
    pub fn counts(&self, path: &SimplePath) -> Vec<usize> {
        let mut v = vec![0; self.grades()];
        for &c in &path.edge_values {
            v[self.grade(c)] += 1;
        }
        v
    }

    /// `(s+1)^(m-g)` for every grade `g`, with the `s - n` digit at exponent 0.
    fn place_values(&self, s: usize) -> Result<Vec<u128>> {
        let base = s as u128 + 1;
        let m = self.grades() as u32;
        (0..m)
            .map(|g| {
                base.checked_pow(m - g).ok_or_else(|| {
                    Error::Capacity(format!("threshold score overflows for s = {s}"))
                })
            })
            .collect()
    }
}

/// Nonzero entries of each row, ascending by column.
fn adjacency(c: &InfluenceMatrix) -> Vec<Vec<(NodeId, f64)>> {
    (0..c.n).map(|i| c.successors(i)).collect()
}

/// `c_ij = w_ij / T`, where `T` is the smallest total weight of a critical
/// group of `j` in which `i` is pivotal.
pub fn direct_influence_matrix(
    g: &WeightedDigraph,
    cfg: &ThresholdConfig,
    limits: &EnumerationLimits,
) -> Result<InfluenceMatrix> {
    let n = g.node_count();
    let columns: Vec<Vec<(NodeId, f64)>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let quota = cfg.resolve(g, j);
            if quota.unreachable || g.in_edges(j).is_empty() {
                return Ok(Vec::new());
            }
            let nb = InNeighborhood::new(g, j, quota.value);
            let totals = nb.min_pivotal_totals(limits)?;
            Ok(nb
                .members
                .iter()
                .zip(&nb.weights)
                .zip(totals)
                .filter_map(|((&i, &w), t)| t.map(|t| (i, (w / t).min(1.0))))
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut m = InfluenceMatrix::zeros(n, MatrixKind::Direct);
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Depth-first walk over simple paths from `source`, visiting neighbours in
/// ascending order. `visit` sees the path stack after each extension.
struct PathWalker<'a> {
    adj: &'a [Vec<(NodeId, f64)>],
    max_len: usize,
    cap: usize,
    found: usize,
    on_path: Vec<bool>,
    nodes: Vec<NodeId>,
    values: Vec<f64>,
}

impl<'a> PathWalker<'a> {
    fn new(adj: &'a [Vec<(NodeId, f64)>], max_len: usize, cap: usize) -> Self {
        PathWalker {
            adj,
            max_len,
            cap,
            found: 0,
            on_path: vec![false; adj.len()],
            nodes: Vec::new(),
            values: Vec::new(),
        }
    }

    fn run(
        &mut self,
        source: NodeId,
        target: Option<NodeId>,
        visit: &mut impl FnMut(&[NodeId], &[f64]),
    ) -> Result<()> {
        self.nodes.clear();
        self.values.clear();
        self.nodes.push(source);
        self.on_path[source] = true;
        let r = self.extend(source, target, visit);
        self.on_path[source] = false;
        r
    }

    fn extend(
        &mut self,
        at: NodeId,
        target: Option<NodeId>,
        visit: &mut impl FnMut(&[NodeId], &[f64]),
    ) -> Result<()> {
        if self.values.len() == self.max_len {
            return Ok(());
        }
        let adj = self.adj;
        for &(next, c) in &adj[at] {
            if self.on_path[next] {
                continue;
            }
            self.nodes.push(next);
            self.values.push(c);
            if target.is_none_or(|t| t == next) {
                self.found += 1;
                if self.found > self.cap {
                    return Err(Error::Capacity(format!(
                        "more than {} simple paths; lower the path-length bound",
                        self.cap
                    )));
                }
                visit(&self.nodes, &self.values);
            }
            // a path may not pass through its own target
            if target != Some(next) {
                self.on_path[next] = true;
                let r = self.extend(next, target, visit);
                self.on_path[next] = false;
                r?;
            }
            self.nodes.pop();
            self.values.pop();
        }
        Ok(())
    }
}

/// All simple paths `i -> j` over nonzero entries of `c` with at most
/// `bound` edges, in lexicographic order of node sequence.
pub fn enumerate_simple_paths(
    c: &InfluenceMatrix,
    i: NodeId,
    j: NodeId,
    bound: Bound,
    cap: usize,
) -> Result<Vec<SimplePath>> {
    if i == j {
        return Err(Error::InvalidArgument("path endpoints must differ".into()));
    }
    if i >= c.n || j >= c.n {
        return Err(Error::InvalidArgument("node index out of range".into()));
    }
    let adj = adjacency(c);
    let mut walker = PathWalker::new(&adj, bound.or(c.n.saturating_sub(1)), cap);
    let mut out = Vec::new();
    walker.run(i, Some(j), &mut |nodes, values| {
        out.push(SimplePath {
            nodes: nodes.to_vec(),
            edge_values: values.to_vec(),
        })
    })?;
    Ok(out)
}

pub fn path_influence(p: &SimplePath, mode: PathMode) -> f64 {
    match mode {
        PathMode::Multiply => p.edge_values.iter().product(),
        PathMode::Min => p.edge_values.iter().copied().fold(f64::INFINITY, f64::min),
    }
}

/// Positional score of a path: worse grades dominate, and at equal grade
/// counts shorter paths win. Lower is better.
///
/// Grade `g` (0 = worst) is weighted by `(s+1)^(m-g)`. One power lower, a
/// two-edge path graded (2, 3) and a three-edge path graded (2, 3, 3) would
/// both score 6 at `s = 3`, although the second has an extra edge.
pub fn threshold_path_score(p: &SimplePath, scheme: &GradeScheme, s: usize) -> Result<u128> {
    if p.len() > s {
        return Err(Error::InvalidArgument(format!(
            "path of length {} exceeds s = {s}",
            p.len()
        )));
    }
    let place = scheme.place_values(s)?;
    let counts = scheme.counts(p);
    Ok(score_from_counts(&counts, &place, s, p.len()))
}

fn score_from_counts(counts: &[usize], place: &[u128], s: usize, len: usize) -> u128 {
    counts
        .iter()
        .zip(place)
        .map(|(&v, &b)| v as u128 * b)
        .sum::<u128>()
        + (s - len) as u128
}

/// Aggregates a set of paths sharing endpoints. For the threshold variants an
/// unbounded `s` uses the longest path in the set as the score base.
pub fn aggregate_paths(
    paths: &[SimplePath],
    variant: Variant,
    scheme: &GradeScheme,
    s: Bound,
) -> Result<f64> {
    if paths.is_empty() {
        return Ok(0.0);
    }
    let mult = |p: &SimplePath| path_influence(p, PathMode::Multiply);
    let min = |p: &SimplePath| path_influence(p, PathMode::Min);
    Ok(match variant {
        Variant::SumPaths => paths.iter().map(mult).sum::<f64>().min(1.0),
        Variant::MaxPath => paths.iter().map(mult).fold(0.0, f64::max),
        Variant::MaxMin => paths.iter().map(min).fold(0.0, f64::max),
        Variant::MultT | Variant::MaxT => {
            let p = threshold_choice(paths, scheme, s)?;
            if variant == Variant::MultT {
                mult(p)
            } else {
                min(p)
            }
        }
    })
}

/// The path picked by the threshold rule: lowest score, then shorter, then
/// lexicographically smaller node sequence.
pub fn threshold_choice<'p>(
    paths: &'p [SimplePath],
    scheme: &GradeScheme,
    s: Bound,
) -> Result<&'p SimplePath> {
    let longest = paths.iter().map(SimplePath::len).max().unwrap_or(0);
    let s = s.or(longest);
    let mut best: Option<(u128, &SimplePath)> = None;
    for p in paths {
        let score = threshold_path_score(p, scheme, s)?;
        let better = match best {
            None => true,
            Some((bs, bp)) => (score, p.len(), &p.nodes) < (bs, bp.len(), &bp.nodes),
        };
        if better {
            best = Some((score, p));
        }
    }
    best.map(|(_, p)| p)
        .ok_or_else(|| Error::InvalidArgument("no paths to choose from".into()))
}

#[derive(Debug, Clone)]
pub struct PathOptions {
    pub max_len: Bound,
    pub grades: GradeScheme,
    pub path_cap: usize,
    pub limits: EnumerationLimits,
}

impl Default for PathOptions {
    fn default() -> Self {
        PathOptions {
            max_len: DEFAULT_MAX_LEN,
            grades: GradeScheme::default(),
            path_cap: DEFAULT_PATH_CAP,
            limits: EnumerationLimits::default(),
        }
    }
}

/// Streaming aggregate for one `(source, target)` pair.
#[derive(Clone, Copy)]
struct PairAcc {
    sum: f64,
    max_mult: f64,
    max_min: f64,
    best_score: u128,
    best_mult: f64,
    best_min: f64,
    seen: bool,
}

impl Default for PairAcc {
    fn default() -> Self {
        PairAcc {
            sum: 0.0,
            max_mult: 0.0,
            max_min: 0.0,
            best_score: u128::MAX,
            best_mult: 0.0,
            best_min: 0.0,
            seen: false,
        }
    }
}

impl PairAcc {
    fn value(&self, variant: Variant) -> f64 {
        if !self.seen {
            return 0.0;
        }
        match variant {
            Variant::SumPaths => self.sum.min(1.0),
            Variant::MaxPath => self.max_mult,
            Variant::MaxMin => self.max_min,
            Variant::MultT => self.best_mult,
            Variant::MaxT => self.best_min,
        }
    }
}

/// Every variant's row for `source`, from a single walk.
fn source_rows(
    adj: &[Vec<(NodeId, f64)>],
    source: NodeId,
    opts: &PathOptions,
    place: &[u128],
    s: usize,
) -> Result<Vec<PairAcc>> {
    let n = adj.len();
    let mut acc = vec![PairAcc::default(); n];
    let mut walker = PathWalker::new(adj, s, opts.path_cap);
    let grades = &opts.grades;
    let mut counts = vec![0usize; grades.grades()];
    walker.run(source, None, &mut |nodes, values| {
        let j = *nodes.last().unwrap();
        let a = &mut acc[j];
        let mult: f64 = values.iter().product();
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        a.seen = true;
        a.sum += mult;
        a.max_mult = a.max_mult.max(mult);
        a.max_min = a.max_min.max(min);
        counts.iter_mut().for_each(|c| *c = 0);
        for &c in values {
            counts[grades.grade(c)] += 1;
        }
        let score = score_from_counts(&counts, place, s, values.len());
        // walk order is lexicographic, so the first path found keeps ties
        if score < a.best_score {
            a.best_score = score;
            a.best_mult = mult;
            a.best_min = min;
        }
    })?;
    Ok(acc)
}

/// `C*` for each requested variant, sharing one path walk per source.
/// The path-count cap applies per source node.
pub fn total_influence_matrices(
    c: &InfluenceMatrix,
    variants: &[Variant],
    opts: &PathOptions,
) -> Result<Vec<InfluenceMatrix>> {
    let n = c.n;
    let s = opts.max_len.or(n.saturating_sub(1));
    let place = opts.grades.place_values(s)?;
    let adj = adjacency(c);
    let rows: Vec<Vec<PairAcc>> = (0..n)
        .into_par_iter()
        .map(|i| source_rows(&adj, i, opts, &place, s))
        .collect::<Result<_>>()?;
    Ok(variants
        .iter()
        .map(|&v| {
            let mut m = InfluenceMatrix::zeros(n, MatrixKind::Total);
            m.bound = Some(opts.max_len);
            m.variant = Some(v);
            for (i, row) in rows.iter().enumerate() {
                for (j, a) in row.iter().enumerate() {
                    if i != j {
                        m.set(i, j, a.value(v));
                    }
                }
            }
            m
        })
        .collect())
}

/// `C*(s)` for one variant, starting from the graph.
pub fn total_influence_matrix(
    g: &WeightedDigraph,
    cfg: &ThresholdConfig,
    variant: Variant,
    opts: &PathOptions,
) -> Result<InfluenceMatrix> {
    let c = direct_influence_matrix(g, cfg, &opts.limits)?;
    Ok(total_influence_matrices(&c, &[variant], opts)?.remove(0))
}
