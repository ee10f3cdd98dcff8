//! Fixtures and brute-force oracles shared by the integration suites. The
//! oracles deliberately avoid the library's own algorithms.

#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use netinfl_core::io::{load_graph, GraphFormat};
use netinfl_core::{NodeId, WeightedDigraph};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> WeightedDigraph {
    load_graph(fixture_path(name), GraphFormat::Csv).expect("fixture loads")
}

pub fn ix(g: &WeightedDigraph, label: &str) -> NodeId {
    g.node_index(label)
        .unwrap_or_else(|| panic!("no node labelled {label}"))
}

pub fn labels_of(g: &WeightedDigraph, nodes: &[NodeId]) -> Vec<String> {
    nodes.iter().map(|&i| g.label(i).to_string()).collect()
}

/// Node sets as sorted numeric labels, for comparison with printed tables.
pub fn numeric(g: &WeightedDigraph, nodes: &[NodeId]) -> Vec<u32> {
    let mut v: Vec<u32> = nodes.iter().map(|&i| g.label(i).parse().unwrap()).collect();
    v.sort_unstable();
    v
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

// ---------------------------------------------------------------- graphs

/// Random digraph on labels `n0..n{n-1}` where each ordered pair carries an
/// edge with probability `p`, weights in `1..=9`. Every node is declared.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> WeightedDigraph {
    let mut b = WeightedDigraph::builder();
    for i in 0..n {
        b.add_node(&format!("n{i}"));
    }
    let mut any = false;
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                let w = rng.gen_range(1..=9) as f64;
                b.add_edge(&format!("n{i}"), &format!("n{j}"), w).unwrap();
                any = true;
            }
        }
    }
    if !any && n > 1 {
        b.add_edge("n0", "n1", 1.0).unwrap();
    }
    b.build().unwrap()
}

/// Square weight matrices with integer weights `1..=9`, zero diagonal and at
/// least one edge.
pub fn weight_matrix(
    min_n: usize,
    max_n: usize,
    density: f64,
) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (min_n..=max_n)
        .prop_flat_map(move |n| {
            prop::collection::vec(
                prop::collection::vec(prop::option::weighted(density, 1u8..=9), n),
                n,
            )
        })
        .prop_map(|rows| {
            let mut w: Vec<Vec<f64>> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, x)| {
                            if i == j {
                                0.0
                            } else {
                                x.map_or(0.0, f64::from)
                            }
                        })
                        .collect()
                })
                .collect();
            if w.iter().flatten().all(|&x| x == 0.0) {
                w[0][1] = 1.0;
            }
            w
        })
}

pub fn graph_from_matrix(w: &[Vec<f64>]) -> WeightedDigraph {
    let mut b = WeightedDigraph::builder();
    for i in 0..w.len() {
        b.add_node(&format!("n{i}"));
    }
    for (i, row) in w.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if i != j && x > 0.0 {
                b.add_edge(&format!("n{i}"), &format!("n{j}"), x).unwrap();
            }
        }
    }
    b.build().unwrap()
}

// ------------------------------------------------------------ coalitions

/// `(members as local indices, total)` for every subset reaching `q`,
/// ordered by size then lexicographically.
pub fn brute_critical(weights: &[f64], q: f64) -> Vec<(Vec<usize>, f64)> {
    let n = weights.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        let total: f64 = members.iter().map(|&k| weights[k]).sum();
        if total >= q - 1e-9 * q.abs().max(1.0) {
            out.push((members, total));
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
    out
}

pub fn brute_pivotal(weights: &[f64], members: &[usize], q: f64) -> Vec<usize> {
    let total: f64 = members.iter().map(|&k| weights[k]).sum();
    members
        .iter()
        .copied()
        .filter(|&k| total - weights[k] < q - 1e-9 * q.abs().max(1.0))
        .collect()
}

// ----------------------------------------------------------------- paths

/// All simple paths `i -> j` with at most `s` edges over positive entries of
/// `c`, by plain recursion over node sequences, sorted lexicographically.
pub fn naive_paths(c: &[Vec<f64>], i: usize, j: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(c: &[Vec<f64>], path: &mut Vec<usize>, j: usize, s: usize, out: &mut Vec<Vec<usize>>) {
        let at = *path.last().unwrap();
        if at == j && path.len() > 1 {
            out.push(path.clone());
            return;
        }
        if path.len() > s {
            return;
        }
        for next in 0..c.len() {
            if c[at][next] > 0.0 && !path.contains(&next) {
                path.push(next);
                go(c, path, j, s, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(c, &mut vec![i], j, s, &mut out);
    out.sort();
    out
}

// ------------------------------------------------------------ centrality

/// Betweenness by enumerating every simple path and keeping the shortest
/// ones per ordered pair (hop or inverse-weight lengths).
pub fn brute_betweenness(g: &WeightedDigraph, inverse: bool, relative: bool) -> Vec<f64> {
    let n = g.node_count();
    let w = g.weight_matrix();
    let len = |a: usize, b: usize| if inverse { 1.0 / w[a][b] } else { 1.0 };
    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let paths = naive_paths(&w, s, t, n);
            if paths.is_empty() {
                continue;
            }
            let lengths: Vec<f64> = paths
                .iter()
                .map(|p| p.windows(2).map(|e| len(e[0], e[1])).sum())
                .collect();
            let best = lengths.iter().copied().fold(f64::INFINITY, f64::min);
            let shortest: Vec<&Vec<usize>> = paths
                .iter()
                .zip(&lengths)
                .filter(|(_, &l)| (l - best).abs() <= 1e-12 * best.max(1.0))
                .map(|(p, _)| p)
                .collect();
            let sigma = shortest.len() as f64;
            for p in &shortest {
                for &v in &p[1..p.len() - 1] {
                    score[v] += if relative { 1.0 / sigma } else { 1.0 };
                }
            }
        }
    }
    score
}

/// Max flow as the minimum `s-t` cut over all node bipartitions.
pub fn brute_min_cut(w: &[Vec<f64>], s: usize, t: usize, removed: Option<usize>) -> f64 {
    let n = w.len();
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << n) {
        let inside = |v: usize| mask >> v & 1 == 1;
        if !inside(s) || inside(t) {
            continue;
        }
        let mut cut = 0.0;
        for a in 0..n {
            for b in 0..n {
                if inside(a) && !inside(b) && Some(a) != removed && Some(b) != removed {
                    cut += w[a][b];
                }
            }
        }
        best = best.min(cut);
    }
    best
}

fn mat_vec(w: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    w.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// `sum_{k < terms} alpha^k W^k (beta 1)`.
pub fn katz_series(w: &[Vec<f64>], alpha: f64, beta: f64, terms: usize) -> Vec<f64> {
    let n = w.len();
    let mut term = vec![beta; n];
    let mut acc = term.clone();
    for _ in 1..terms {
        term = mat_vec(w, &term).into_iter().map(|x| x * alpha).collect();
        acc.iter_mut().zip(&term).for_each(|(a, t)| *a += t);
    }
    acc
}

/// `alpha sum_{k < terms} beta^k W^{k+1} 1`.
pub fn bonacich_series(w: &[Vec<f64>], alpha: f64, beta: f64, terms: usize) -> Vec<f64> {
    let n = w.len();
    let mut term = mat_vec(w, &vec![alpha; n]);
    let mut acc = term.clone();
    for _ in 1..terms {
        term = mat_vec(w, &term).into_iter().map(|x| x * beta).collect();
        acc.iter_mut().zip(&term).for_each(|(a, t)| *a += t);
    }
    acc
}

// ------------------------------------------------------------------ rank

/// `(concordant, discordant, tied_a_only, tied_b_only, tied_both)` by
/// direct pair inspection.
pub fn pair_census(a: &[f64], b: &[f64]) -> (f64, f64, f64, f64, f64) {
    let (mut c, mut d, mut ta, mut tb, mut tt) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let da = a[i] - a[j];
            let db = b[i] - b[j];
            match (da == 0.0, db == 0.0) {
                (true, true) => tt += 1.0,
                (true, false) => ta += 1.0,
                (false, true) => tb += 1.0,
                _ if da * db > 0.0 => c += 1.0,
                _ => d += 1.0,
            }
        }
    }
    (c, d, ta, tb, tt)
}

pub fn brute_tau_b(a: &[f64], b: &[f64]) -> f64 {
    let (c, d, ta, tb, _) = pair_census(a, b);
    (c - d) / ((c + d + ta) * (c + d + tb)).sqrt()
}

pub fn brute_gamma(a: &[f64], b: &[f64]) -> f64 {
    let (c, d, ..) = pair_census(a, b);
    (c - d) / (c + d)
}
