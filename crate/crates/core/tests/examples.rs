mod common;

use common::*;
use netinfl_core::coalitions::{coalition_report, EnumerationLimits};
use netinfl_core::lric::paths::{direct_influence_matrix, total_influence_matrix, PathOptions};
use netinfl_core::lric::sim::{cascade, sim_influence_matrix, SimConfig};
use netinfl_core::lric::{influence_vector, node_weights_u, Bound, Variant};
use netinfl_core::sric::{sric_index, SricOptions};
use netinfl_core::ThresholdConfig;

#[test]
fn weak_direct_link_is_not_influence() {
    let g = fixture("fig1.csv");
    let cfg = ThresholdConfig::parse("abs:40").unwrap();
    let c = direct_influence_matrix(&g, &cfg, &EnumerationLimits::default()).unwrap();
    let (n1, n2, n4) = (ix(&g, "1"), ix(&g, "2"), ix(&g, "4"));
    assert_eq!(c.get(n4, n1), 0.0);
    assert_eq!(c.get(n4, n2), 1.0);
    let total =
        total_influence_matrix(&g, &cfg, Variant::MaxPath, &PathOptions::default()).unwrap();
    assert!(total.get(n4, n1) > 0.0);
}

#[test]
fn example2_report_for_node_1() {
    let g = fixture("example2.csv");
    let r = coalition_report(
        &g,
        ix(&g, "1"),
        &ThresholdConfig::fraction(0.5),
        &EnumerationLimits::default(),
    )
    .unwrap();
    assert_eq!(r.minimal_direct_critical.len(), 4);
    assert_eq!(r.pivotal_sets.len(), r.critical_groups.len());
    assert!(r.critical_groups.len() >= 8);
}

#[test]
fn example2_path_vectors_rank_2_5_8_first() {
    let g = fixture("example2.csv");
    let cfg = ThresholdConfig::fraction(0.5);
    let u = node_weights_u(&g).unwrap().scores;
    let opts = PathOptions {
        max_len: Bound::Unbounded,
        ..Default::default()
    };
    for v in Variant::ALL {
        let m = total_influence_matrix(&g, &cfg, v, &opts).unwrap();
        let vec = influence_vector(&m, &u).unwrap();
        let mut top: Vec<u32> = netinfl_core::rank::to_ranking(&vec).order[..3]
            .iter()
            .map(|&i| g.label(i).parse().unwrap())
            .collect();
        top.sort_unstable();
        assert_eq!(top, [2, 5, 8], "{v}");
    }
}

#[test]
fn example2_cascades() {
    let g = fixture("example2.csv");
    let cfg = ThresholdConfig::fraction(0.5);
    let seed = [ix(&g, "2"), ix(&g, "7")];
    let run = cascade(&g, &cfg, &seed, Bound::Unbounded).unwrap();
    assert_eq!(numeric(&g, &run.final_set), [1, 2, 3, 4, 6, 7, 8, 9, 10]);
    let sim = sim_influence_matrix(&g, &cfg, &SimConfig::default()).unwrap();
    assert!(sim.matrix.is_well_formed());
    assert_eq!(sim.seeds_evaluated, (1 << 10) - 2);
}

#[test]
fn example1_sric_ranking() {
    let g = fixture("example1.csv");
    let s = sric_index(&g, &ThresholdConfig::fraction(0.7), &SricOptions::default()).unwrap();
    let top = g.label(s.argmax().unwrap());
    assert_eq!(top, "5");
    assert_eq!(s[ix(&g, "7")], 0.0);
    assert_eq!(s[ix(&g, "8")], 0.0);
}
