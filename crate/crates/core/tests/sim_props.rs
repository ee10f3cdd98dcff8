mod common;

use common::*;
use netinfl_core::lric::sim::{cascade, sim_influence_matrix, CascadeEngine, SimConfig};
use netinfl_core::lric::Bound;
use netinfl_core::ThresholdConfig;
use proptest::prelude::*;

fn nested(max_n: usize) -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<usize>, usize, usize)> {
    weight_matrix(2, max_n, 0.3).prop_flat_map(|w| {
        let n = w.len();
        let order = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (Just(w), order, 1..=n, 1..=n).prop_map(|(w, o, a, b)| (w, o, a.min(b), a.max(b)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cascade_is_monotone_in_the_seed((w, order, ka, kb) in nested(12), frac in 0.1f64..1.0) {
        let g = graph_from_matrix(&w);
        let cfg = ThresholdConfig::fraction(frac);
        let small = cascade(&g, &cfg, &order[..ka], Bound::Unbounded).unwrap().final_set;
        let large = cascade(&g, &cfg, &order[..kb], Bound::Unbounded).unwrap().final_set;
        prop_assert!(small.iter().all(|x| large.contains(x)));
        prop_assert!(order[..ka].iter().all(|x| small.contains(x)));
    }

    #[test]
    fn final_sets_are_fixed_points((w, order, ka, _) in nested(12), frac in 0.1f64..1.0) {
        let g = graph_from_matrix(&w);
        let cfg = ThresholdConfig::fraction(frac);
        let first = cascade(&g, &cfg, &order[..ka], Bound::Unbounded).unwrap();
        let again = cascade(&g, &cfg, &first.final_set, Bound::Unbounded).unwrap();
        prop_assert_eq!(&again.final_set, &first.final_set);
        prop_assert!(again.steps.is_empty());
    }

    #[test]
    fn step_limit_never_grows_the_result((w, order, ka, _) in nested(10), frac in 0.1f64..1.0, s in 0usize..4) {
        let g = graph_from_matrix(&w);
        let cfg = ThresholdConfig::fraction(frac);
        let engine = CascadeEngine::new(&g, &cfg);
        let short = engine.cascade(&order[..ka], Bound::Limited(s)).unwrap().final_set;
        let long = engine.cascade(&order[..ka], Bound::Limited(s + 1)).unwrap().final_set;
        prop_assert!(short.iter().all(|x| long.contains(x)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sampling_agrees_with_enumeration(w in weight_matrix(3, 6, 0.4), frac in 0.2f64..0.9, seed in any::<u64>()) {
        let g = graph_from_matrix(&w);
        let cfg = ThresholdConfig::fraction(frac);
        let exact = sim_influence_matrix(&g, &cfg, &SimConfig::default()).unwrap();
        let sampled = sim_influence_matrix(
            &g,
            &cfg,
            &SimConfig { samples: Some(20_000), rng_seed: seed, ..Default::default() },
        )
        .unwrap();
        let se = sampled.standard_errors.as_ref().unwrap();
        let n = w.len();
        for i in 0..n {
            for j in 0..n {
                let d = (exact.matrix.get(i, j) - sampled.matrix.get(i, j)).abs();
                // p in {0, 1} yields a zero standard error; allow the sampling floor there
                prop_assert!(d <= 6.0 * se[i * n + j] + 2e-3, "cell ({i},{j}) off by {d}");
            }
        }
    }
}
