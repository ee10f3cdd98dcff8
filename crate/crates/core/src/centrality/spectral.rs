//! Eigenvector, Katz, Bonacich and PageRank-style scores. All of them score a
//! node by the nodes it points to, so strong out-influence ranks high; the
//! PageRank variant instead collects from in-neighbours, split by their
//! out-strength.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::scores::ScoreVector;

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Largest N solved with dense LU; bigger systems iterate.
    pub dense_limit: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            max_iter: 100_000,
            dense_limit: 2000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralResult {
    pub vector: ScoreVector,
    pub eigenvalue: f64,
    pub residual: f64,
}

fn dense(g: &WeightedDigraph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut m = DMatrix::zeros(n, n);
    for e in g.edges() {
        m[(e.source, e.target)] = e.weight;
    }
    m
}

fn max_abs(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Strongly connected components of the nonzero pattern of `m`, as index
/// lists (Kosaraju).
fn components(m: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let succ = |v: usize| (0..n).filter(move |&w| m[(v, w)] != 0.0);
    let pred = |v: usize| (0..n).filter(move |&w| m[(w, v)] != 0.0);
    let mut seen = vec![false; n];
    let mut finish = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, succ(root).collect::<Vec<_>>())];
        while let Some((v, next)) = stack.last_mut() {
            match next.pop() {
                Some(w) if !seen[w] => {
                    seen[w] = true;
                    let nw = succ(w).collect();
                    stack.push((w, nw));
                }
                Some(_) => {}
                None => {
                    finish.push(*v);
                    stack.pop();
                }
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for &root in finish.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[root] = id;
        let mut members = vec![root];
        let mut k = 0;
        while k < members.len() {
            for w in pred(members[k]) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Perron root of an irreducible nonnegative matrix from Collatz-Wielandt
/// bounds on the iterates of `M + I`.
fn perron_root(m: &DMatrix<f64>, opts: &SolverOptions) -> Result<f64> {
    let n = m.nrows();
    let shifted = m + DMatrix::identity(n, n);
    let mut x = DVector::from_element(n, 1.0);
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    for _ in 0..opts.max_iter {
        let y = &shifted * &x;
        let ratios = y.iter().zip(x.iter()).map(|(a, b)| a / b);
        lo = ratios.clone().fold(f64::INFINITY, f64::min);
        hi = ratios.fold(0.0, f64::max);
        if hi - lo <= opts.tol * hi.max(1.0) {
            return Ok(0.5 * (lo + hi) - 1.0);
        }
        x = &y / y.max();
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual: hi - lo,
    })
}

/// Spectral radius of a nonnegative matrix: the largest over its strongly
/// connected blocks. Blocks above the dense limit use the row-sum bound.
fn radius_of(m: &DMatrix<f64>, opts: &SolverOptions) -> Result<f64> {
    let mut rho: f64 = 0.0;
    for block in components(m) {
        let k = block.len();
        if k == 1 {
            continue;
        }
        let sub = DMatrix::from_fn(k, k, |a, b| m[(block[a], block[b])]);
        let r = if k > opts.dense_limit {
            sub.row_iter().map(|r| r.sum()).fold(0.0, f64::max)
        } else {
            match nalgebra::linalg::Schur::try_new(sub.clone(), f64::EPSILON, 1000 * k) {
                Some(s) => s
                    .complex_eigenvalues()
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max),
                None => perron_root(&sub, opts)?,
            }
        };
        rho = rho.max(r);
    }
    Ok(rho)
}

/// Spectral radius of the weight matrix.
pub fn spectral_radius(g: &WeightedDigraph, opts: &SolverOptions) -> Result<f64> {
    radius_of(&dense(g), opts)
}

/// Dominant eigenpair of `W` (row `i` sums `w_ij v_j`), scaled so the
/// largest entry is 1.
pub fn eigenvector_centrality(g: &WeightedDigraph, opts: &SolverOptions) -> Result<SpectralResult> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::InvalidGraph("graph has no nodes".into()));
    }
    let w = dense(g);
    // the shift breaks the oscillation of periodic (e.g. bipartite) graphs
    let shift = w.row_iter().map(|r| r.sum()).fold(0.0, f64::max).max(1.0) * 0.5;
    let mut v = DVector::from_element(n, 1.0);
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_iter {
        let mut next = &w * &v + &v * shift;
        let top = max_abs(&next);
        if top == 0.0 {
            break;
        }
        next /= top;
        residual = max_abs(&(&next - &v));
        v = next;
        if residual < opts.tol {
            let wv = &w * &v;
            let lambda = wv.max();
            let res = max_abs(&(wv - &v * lambda));
            return Ok(SpectralResult {
                vector: ScoreVector::new("eigenvector", v.iter().copied().collect())
                    .with_param("lambda", lambda),
                eigenvalue: lambda,
                residual: res,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual,
    })
}

/// Solves `(I - a M) x = b`, densely when small, by fixed-point iteration
/// otherwise.
fn solve_shifted(
    m: &DMatrix<f64>,
    a: f64,
    b: &DVector<f64>,
    opts: &SolverOptions,
) -> Result<DVector<f64>> {
    let n = m.nrows();
    if n <= opts.dense_limit {
        let sys = DMatrix::identity(n, n) - m * a;
        return sys
            .lu()
            .solve(b)
            .ok_or_else(|| Error::Numerical("singular linear system".into()));
    }
    let mut x = b.clone();
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_iter {
        let next = b + m * &x * a;
        residual = max_abs(&(&next - &x));
        x = next;
        if residual < opts.tol {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual,
    })
}

fn fixed_point_residual(m: &DMatrix<f64>, a: f64, b: &DVector<f64>, x: &DVector<f64>) -> f64 {
    max_abs(&(x - (b + m * x * a)))
}

/// `beta (I - alpha W)^{-1} 1`; requires `|alpha| < 1 / lambda_max`.
pub fn katz(
    g: &WeightedDigraph,
    alpha: f64,
    beta: f64,
    opts: &SolverOptions,
) -> Result<ScoreVector> {
    let w = dense(g);
    let lambda = radius_of(&w, opts)?;
    if alpha.abs() * lambda >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} must be below 1/lambda_max (lambda_max = {lambda})"
        )));
    }
    let b = DVector::from_element(g.node_count(), beta);
    let x = solve_shifted(&w, alpha, &b, opts)?;
    let res = fixed_point_residual(&w, alpha, &b, &x);
    Ok(ScoreVector::new("katz", x.iter().copied().collect())
        .with_param("alpha", alpha)
        .with_param("beta", beta)
        .with_param("lambda_max", lambda)
        .with_param("residual", res))
}

/// `alpha (I - beta W)^{-1} W 1`; negative `beta` is allowed.
pub fn bonacich(
    g: &WeightedDigraph,
    alpha: f64,
    beta: f64,
    opts: &SolverOptions,
) -> Result<ScoreVector> {
    let w = dense(g);
    let lambda = radius_of(&w, opts)?;
    if beta.abs() * lambda >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "|beta| = {} must be below 1/lambda_max (lambda_max = {lambda})",
            beta.abs()
        )));
    }
    let n = g.node_count();
    let b = &w * DVector::from_element(n, 1.0) * alpha;
    let x = solve_shifted(&w, beta, &b, opts)?;
    let res = fixed_point_residual(&w, beta, &b, &x);
    Ok(ScoreVector::new("bonacich", x.iter().copied().collect())
        .with_param("alpha", alpha)
        .with_param("beta", beta)
        .with_param("lambda_max", lambda)
        .with_param("residual", res))
}

/// `C_i = alpha sum_j (w_ji / out_j) C_j + beta`; nodes without out-edges
/// pass nothing on.
pub fn pagerank_variant(
    g: &WeightedDigraph,
    alpha: f64,
    beta: f64,
    opts: &SolverOptions,
) -> Result<ScoreVector> {
    let n = g.node_count();
    let mut m = DMatrix::zeros(n, n);
    for e in g.edges() {
        m[(e.target, e.source)] = e.weight / g.out_strength(e.source);
    }
    let rho = radius_of(&m, opts)?;
    if alpha.abs() * rho >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} times the spectral radius {rho} must be below 1"
        )));
    }
    let b = DVector::from_element(n, beta);
    let x = solve_shifted(&m, alpha, &b, opts)?;
    let res = fixed_point_residual(&m, alpha, &b, &x);
    Ok(ScoreVector::new("pagerank", x.iter().copied().collect())
        .with_param("alpha", alpha)
        .with_param("beta", beta)
        .with_param("residual", res))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    #[test]
    fn symmetric_two_cycle() {
        let g = WeightedDigraph::from_edges(&[("a", "b", 2.0), ("b", "a", 2.0)]).unwrap();
        let r = eigenvector_centrality(&g, &opts()).unwrap();
        assert_eq!(r.vector.scores, vec![1.0, 1.0]);
        assert!((r.eigenvalue - 2.0).abs() < 1e-9);
        assert!(r.residual < 1e-9);
    }

    #[test]
    fn radius_over_components() {
        let chain = WeightedDigraph::from_edges(&[("a", "b", 1.0), ("b", "c", 1.0)]).unwrap();
        assert_eq!(spectral_radius(&chain, &opts()).unwrap(), 0.0);
        let g = WeightedDigraph::from_edges(&[
            ("a", "b", 2.0),
            ("b", "a", 2.0),
            ("b", "c", 1.0),
            ("c", "d", 3.0),
            ("d", "e", 3.0),
            ("e", "c", 3.0),
        ])
        .unwrap();
        assert!((spectral_radius(&g, &opts()).unwrap() - 3.0).abs() < 1e-9);
        let sub = DMatrix::from_row_slice(3, 3, &[0.0, 3.0, 0.0, 0.0, 0.0, 3.0, 3.0, 0.0, 0.0]);
        assert!((perron_root(&sub, &opts()).unwrap() - 3.0).abs() < 1e-8);
    }

    #[test]
    fn katz_degenerate_cases() {
        let g = WeightedDigraph::from_edges(&[("a", "b", 1.0), ("b", "c", 1.0)]).unwrap();
        let k = katz(&g, 0.0, 2.0, &opts()).unwrap();
        assert_eq!(k.scores, vec![2.0; 3]);
        let cyc = WeightedDigraph::from_edges(&[("a", "b", 1.0), ("b", "a", 1.0)]).unwrap();
        assert!(katz(&cyc, 1.0, 1.0, &opts()).is_err());
        let k = katz(&g, 0.5, 1.0, &opts()).unwrap();
        assert!((k.scores[0] - 1.75).abs() < 1e-12);
    }

    #[test]
    fn bonacich_collapses_to_out_strength() {
        let g = WeightedDigraph::from_edges(&[("a", "b", 3.0), ("a", "c", 1.0), ("b", "c", 2.0)])
            .unwrap();
        let b = bonacich(&g, 2.0, 0.0, &opts()).unwrap();
        assert_eq!(b.scores, vec![8.0, 4.0, 0.0]);
        let z = bonacich(&g, 0.0, 0.1, &opts()).unwrap();
        assert!(z.scores.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn pagerank_sources_get_beta() {
        let g = WeightedDigraph::from_edges(&[("a", "b", 1.0), ("b", "c", 1.0)]).unwrap();
        let p = pagerank_variant(&g, 0.85, 0.15, &opts()).unwrap();
        assert!((p.scores[0] - 0.15).abs() < 1e-12);
        assert!((p.scores[1] - 0.15 * 1.85).abs() < 1e-12);
        let sym = WeightedDigraph::from_edges(&[("a", "b", 1.0), ("b", "a", 1.0)]).unwrap();
        let q = pagerank_variant(&sym, 0.5, 1.0, &opts()).unwrap();
        assert!((q.scores[0] - q.scores[1]).abs() < 1e-12);
    }

    #[test]
    fn iterative_path_agrees_with_dense() {
        let g = WeightedDigraph::from_edges(&[("a", "b", 1.0), ("b", "c", 2.0), ("c", "a", 0.5)])
            .unwrap();
        let small = SolverOptions {
            dense_limit: 0,
            ..opts()
        };
        let d = katz(&g, 0.3, 1.0, &opts()).unwrap();
        let i = katz(&g, 0.3, 1.0, &small).unwrap();
        for (x, y) in d.scores.iter().zip(&i.scores) {
            assert!((x - y).abs() < 1e-8);
        }
    }
}
