mod common;

use common::random_graph;
use infcomm_core::{estimate_core, evaluate, Aggregation};
use proptest::prelude::*;

fn subset_pair() -> impl Strategy<Value = (u64, Vec<usize>, Vec<usize>)> {
    (any::<u64>(), prop::collection::vec(0usize..12, 1..12), prop::collection::vec(0usize..12, 0..12)).prop_map(
        |(seed, mut small, extra)| {
            small.sort_unstable();
            small.dedup();
            let mut large = small.clone();
            large.extend(extra);
            large.sort_unstable();
            large.dedup();
            (seed, small, large)
        },
    )
}

proptest! {
    #[test]
    fn size_proportional_kinds_grow_with_supersets((seed, small, large) in subset_pair(), alpha in 0.0f64..3.0) {
        let g = random_graph(seed, 12, 0.3, 9);
        for kind in [Aggregation::Sum, Aggregation::SumSurplus { alpha }] {
            prop_assert!(kind.traits().size_proportional);
            prop_assert!(evaluate(kind, &g, &small).unwrap() <= evaluate(kind, &g, &large).unwrap());
        }
    }

    #[test]
    fn node_domination_kinds_pick_a_member((seed, members, _) in subset_pair()) {
        let g = random_graph(seed, 12, 0.3, 9);
        for kind in [Aggregation::Min, Aggregation::Max] {
            prop_assert!(kind.traits().node_domination);
            let value = evaluate(kind, &g, &members).unwrap();
            prop_assert!(members.iter().any(|&v| evaluate(kind, &g, &[v]).unwrap() == value));
        }
    }

    #[test]
    fn averages_stay_within_member_range((seed, members, _) in subset_pair()) {
        let g = random_graph(seed, 12, 0.3, 9);
        let avg = evaluate(Aggregation::Avg, &g, &members).unwrap();
        prop_assert!(avg >= evaluate(Aggregation::Min, &g, &members).unwrap());
        prop_assert!(avg <= evaluate(Aggregation::Max, &g, &members).unwrap());
    }

    #[test]
    fn core_estimate_decreases_in_k(n in 100usize..1_000_000, gamma in 2.01f64..2.99, k in 1usize..50) {
        let (v1, _) = estimate_core(n, gamma, k);
        let (v2, _) = estimate_core(n, gamma, k + 1);
        prop_assert!(v2 < v1);
    }
}

#[test]
fn non_size_proportional_kinds_have_shrinking_supersets() {
    let g = random_graph(3, 4, 1.0, 0).with_weights(vec![10.0, 1.0, 0.0, 0.0]).unwrap();
    for kind in [Aggregation::Avg, Aggregation::WeightDensity { beta: 1.0 }, Aggregation::Min] {
        assert!(!kind.traits().size_proportional);
        assert!(evaluate(kind, &g, &[0]).unwrap() > evaluate(kind, &g, &[0, 2]).unwrap());
    }
}
