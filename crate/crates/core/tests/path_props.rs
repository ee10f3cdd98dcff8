mod common;

use common::*;
use netinfl_core::coalitions::EnumerationLimits;
use netinfl_core::lric::paths::{
    direct_influence_matrix, enumerate_simple_paths, total_influence_matrices, PathOptions,
    DEFAULT_PATH_CAP,
};
use netinfl_core::lric::sim::relative_influence_matrix;
use netinfl_core::lric::{Bound, InfluenceMatrix, MatrixKind, Variant};
use netinfl_core::ThresholdConfig;
use proptest::prelude::*;

fn unit_matrix(max_n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    weight_matrix(2, max_n, 0.4).prop_map(|w| {
        w.into_iter()
            .map(|r| r.into_iter().map(|x| x / 9.0).collect())
            .collect()
    })
}

fn totals(w: &[Vec<f64>], frac: f64, bound: Bound) -> Vec<InfluenceMatrix> {
    let g = graph_from_matrix(w);
    let c = direct_influence_matrix(
        &g,
        &ThresholdConfig::fraction(frac),
        &EnumerationLimits::default(),
    )
    .unwrap();
    let opts = PathOptions {
        max_len: bound,
        ..Default::default()
    };
    total_influence_matrices(&c, &Variant::ALL, &opts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_plain_recursion(m in unit_matrix(8), s in 1usize..8) {
        let n = m.len();
        let c = InfluenceMatrix::from_rows(m.clone(), MatrixKind::Direct).unwrap();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let got: Vec<Vec<usize>> =
                    enumerate_simple_paths(&c, i, j, Bound::Limited(s), DEFAULT_PATH_CAP)
                        .unwrap()
                        .into_iter()
                        .map(|p| p.nodes)
                        .collect();
                prop_assert_eq!(got, naive_paths(&m, i, j, s));
            }
        }
    }

    #[test]
    fn matrices_are_bounded_with_zero_diagonal(w in weight_matrix(2, 7, 0.35), frac in 0.1f64..1.0) {
        let g = graph_from_matrix(&w);
        let cfg = ThresholdConfig::fraction(frac);
        let c = direct_influence_matrix(&g, &cfg, &EnumerationLimits::default()).unwrap();
        prop_assert!(c.is_well_formed());
        prop_assert!(relative_influence_matrix(&g, &cfg).0.is_well_formed());
        for m in totals(&w, frac, Bound::Unbounded) {
            prop_assert!(m.is_well_formed());
        }
    }

    #[test]
    fn variant_dominance(w in weight_matrix(2, 7, 0.35), frac in 0.1f64..1.0, s in 1usize..7) {
        let ms = totals(&w, frac, Bound::Limited(s));
        let n = w.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert!(ms[1].get(i, j) <= ms[0].get(i, j) + 1e-15);
                prop_assert!(ms[1].get(i, j) <= ms[2].get(i, j) + 1e-15);
                prop_assert!(ms[3].get(i, j) <= ms[4].get(i, j) + 1e-15);
            }
        }
    }

    #[test]
    fn longer_paths_never_lower_influence(w in weight_matrix(2, 7, 0.35), frac in 0.1f64..1.0, s in 1usize..6) {
        let short = totals(&w, frac, Bound::Limited(s));
        let long = totals(&w, frac, Bound::Limited(s + 1));
        let n = w.len();
        for k in 0..3 {
            for i in 0..n {
                for j in 0..n {
                    prop_assert!(short[k].get(i, j) <= long[k].get(i, j) + 1e-15);
                }
            }
        }
    }

    #[test]
    fn direct_influence_is_scale_invariant(w in weight_matrix(2, 7, 0.35), frac in 0.1f64..1.0, k in 0.1f64..50.0) {
        let g = graph_from_matrix(&w);
        let cfg = ThresholdConfig::fraction(frac);
        let lim = EnumerationLimits::default();
        let a = direct_influence_matrix(&g, &cfg, &lim).unwrap();
        let b = direct_influence_matrix(&g.scaled(k).unwrap(), &cfg, &lim).unwrap();
        for i in 0..w.len() {
            for j in 0..w.len() {
                prop_assert!((a.get(i, j) - b.get(i, j)).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn path_cap_is_enforced() {
    let n = 9;
    let full: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 0.5 }).collect())
        .collect();
    let c = InfluenceMatrix::from_rows(full, MatrixKind::Direct).unwrap();
    assert!(enumerate_simple_paths(&c, 0, 1, Bound::Unbounded, 100).is_err());
}
