mod common;

use common::*;
use netinfl_core::coalitions::{
    critical_groups, minimal_direct_critical_groups, pivotal_members, EnumerationLimits,
};
use netinfl_core::WeightedDigraph;
use proptest::prelude::*;

fn star(weights: &[f64]) -> (WeightedDigraph, usize, Vec<usize>) {
    let mut b = WeightedDigraph::builder();
    for (k, w) in weights.iter().enumerate() {
        b.add_edge(&format!("m{k}"), "t", *w).unwrap();
    }
    let g = b.build().unwrap();
    let t = ix(&g, "t");
    let members = (0..weights.len())
        .map(|k| ix(&g, &format!("m{k}")))
        .collect();
    (g, t, members)
}

fn neighbourhood() -> impl Strategy<Value = (Vec<f64>, f64)> {
    (prop::collection::vec(1u32..=30, 1..=12), 0.05f64..1.0)
        .prop_map(|(w, f)| (w.into_iter().map(f64::from).collect(), f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn critical_groups_match_subset_enumeration((weights, frac) in neighbourhood()) {
        let q = weights.iter().sum::<f64>() * frac;
        let (g, t, nb) = star(&weights);
        let got = critical_groups(&g, t, q, &EnumerationLimits::default()).unwrap();
        let want = brute_critical(&weights, q);
        prop_assert_eq!(got.len(), want.len());
        for (c, (m, total)) in got.iter().zip(&want) {
            let ids: Vec<usize> = m.iter().map(|&k| nb[k]).collect();
            prop_assert_eq!(&c.members, &ids);
            prop_assert!((c.total_weight - total).abs() < 1e-9);
            let piv: Vec<usize> = brute_pivotal(&weights, m, q).iter().map(|&k| nb[k]).collect();
            prop_assert_eq!(pivotal_members(&g, t, c, q).unwrap(), piv);
        }
    }

    #[test]
    fn minimal_groups_are_the_all_pivotal_ones((weights, frac) in neighbourhood()) {
        let q = weights.iter().sum::<f64>() * frac;
        let (g, t, nb) = star(&weights);
        let got: Vec<Vec<usize>> = minimal_direct_critical_groups(&g, t, q, &EnumerationLimits::default())
            .unwrap()
            .into_iter()
            .map(|c| c.members)
            .collect();
        let want: Vec<Vec<usize>> = brute_critical(&weights, q)
            .into_iter()
            .filter(|(m, _)| brute_pivotal(&weights, m, q).len() == m.len())
            .map(|(m, _)| m.iter().map(|&k| nb[k]).collect())
            .collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn supersets_of_critical_groups_are_critical((weights, frac) in neighbourhood()) {
        let q = weights.iter().sum::<f64>() * frac;
        let (g, t, _) = star(&weights);
        let groups = critical_groups(&g, t, q, &EnumerationLimits::default()).unwrap();
        let sets: Vec<&Vec<usize>> = groups.iter().map(|c| &c.members).collect();
        let all: Vec<usize> = g.in_edges(t).iter().map(|&(s, _)| s).collect();
        for m in &sets {
            for &extra in &all {
                if !m.contains(&extra) {
                    let mut bigger = (*m).clone();
                    bigger.push(extra);
                    bigger.sort_unstable();
                    prop_assert!(sets.contains(&&bigger));
                }
            }
        }
    }
}

#[test]
fn unreachable_quota_has_no_groups() {
    let (g, t, _) = star(&[1.0, 2.0]);
    assert!(critical_groups(&g, t, 10.0, &EnumerationLimits::default())
        .unwrap()
        .is_empty());
}
