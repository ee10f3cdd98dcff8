mod common;

use common::*;
use netinfl_core::sric::{sric_index, SricOptions};
use netinfl_core::ThresholdConfig;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn scores_are_normalised_and_scale_free(w in weight_matrix(2, 8, 0.4), frac in 0.1f64..1.0, k in 0.01f64..100.0) {
        let g = graph_from_matrix(&w);
        let cfg = ThresholdConfig::fraction(frac);
        let opts = SricOptions::default();
        if let Ok(s) = sric_index(&g, &cfg, &opts) {
            let total = s.sum();
            prop_assert!(total == 0.0 || (total - 1.0).abs() < 1e-9);
            prop_assert!(s.scores.iter().all(|&x| x >= 0.0));
            let scaled = sric_index(&g.scaled(k).unwrap(), &cfg, &opts).unwrap();
            for (a, b) in s.scores.iter().zip(&scaled.scores) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn nodes_without_out_edges_score_zero(w in weight_matrix(2, 8, 0.4), frac in 0.1f64..1.0) {
        let g = graph_from_matrix(&w);
        if let Ok(s) = sric_index(&g, &ThresholdConfig::fraction(frac), &SricOptions::default()) {
            for i in g.nodes().filter(|&i| g.out_edges(i).is_empty()) {
                prop_assert_eq!(s.scores[i], 0.0);
            }
        }
    }
}
