use proptest::prelude::*;

use plwd_core::algorithm::{FrontierRule, Observer};
use plwd_core::generate::{gen_random_dag, WeightRange};
use plwd_core::oracle::{brute_force_distance, enumerate_all_paths, is_antichain};
use plwd_core::pareto::LabelSet;
use plwd_core::{
    greedy_bellman_ford_plwd, LabelEngine, Orientation, VertexId, WeightSequence, WeightedDigraph,
};

fn arb_graph() -> impl Strategy<Value = WeightedDigraph> {
    (1usize..=9, 0.1f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| {
        gen_random_dag(n, p, seed, WeightRange::integers(1, 9))
            .unwrap()
            .to_graph()
            .unwrap()
    })
}

fn arb_weights() -> impl Strategy<Value = WeightSequence> {
    prop_oneof![
        Just(WeightSequence::InversePower(1.0)),
        Just(WeightSequence::InversePower(2.0)),
        (0.1f64..3.0).prop_map(WeightSequence::Constant),
        prop::collection::vec(0.05f64..2.0, 8).prop_map(|mut v| {
            v.sort_by(|a, b| b.total_cmp(a));
            WeightSequence::ExplicitList(v)
        }),
    ]
}

fn close(a: f64, b: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-300)
}

#[derive(Default)]
struct AntichainWatch {
    checks: usize,
    broken: usize,
}

impl Observer for AntichainWatch {
    fn after_filter(&mut self, _vertex: VertexId, labels: &LabelSet) {
        self.checks += 1;
        if !is_antichain(labels) {
            self.broken += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_brute_force_in_both_orientations(g in arb_graph(), w in arb_weights(), root in 0usize..9) {
        let root = VertexId(root % g.n_vertices());
        let to = LabelEngine::new(&g, &w).run(root).unwrap().report;
        let from = LabelEngine::new(&g, &w).orientation(Orientation::FromSource).run(root).unwrap().report;
        for v in 0..g.n_vertices() {
            let v = VertexId(v);
            prop_assert!(close(to.value(v), brute_force_distance(&g, &w, v, root).unwrap()));
            prop_assert!(close(from.value(v), brute_force_distance(&g, &w, root, v).unwrap()));
        }
    }

    #[test]
    fn labels_are_realised_by_paths(g in arb_graph(), w in arb_weights(), root in 0usize..9) {
        let root = VertexId(root % g.n_vertices());
        let outcome = LabelEngine::new(&g, &w).run(root).unwrap();
        for v in 0..g.n_vertices() {
            let pairs = enumerate_all_paths(&g, VertexId(v), root).unwrap().pairs();
            for label in outcome.label_sets[v].iter() {
                prop_assert!(pairs.contains(&(label.sum, label.len)));
            }
        }
    }

    #[test]
    fn every_filtered_set_is_an_antichain(g in arb_graph(), w in arb_weights(), root in 0usize..9) {
        let root = VertexId(root % g.n_vertices());
        let mut watch = AntichainWatch::default();
        LabelEngine::new(&g, &w).run_observed(root, &mut watch).unwrap();
        prop_assert_eq!(watch.broken, 0);
    }

    #[test]
    fn terminates_within_vertex_count_passes(g in arb_graph(), w in arb_weights(), root in 0usize..9) {
        let root = VertexId(root % g.n_vertices());
        let outcome = LabelEngine::new(&g, &w).run(root).unwrap();
        prop_assert!(outcome.stats.passes <= g.n_vertices());
    }

    #[test]
    fn witnesses_realise_the_distance(g in arb_graph(), w in arb_weights(), root in 0usize..9) {
        let root = VertexId(root % g.n_vertices());
        for orientation in [Orientation::ToTarget, Orientation::FromSource] {
            let report = LabelEngine::new(&g, &w).orientation(orientation).witnesses(true).run(root).unwrap().report;
            for v in 0..g.n_vertices() {
                let v = VertexId(v);
                match report.witness(v) {
                    Some(p) => {
                        let (a, b) = match orientation {
                            Orientation::ToTarget => (v, root),
                            Orientation::FromSource => (root, v),
                        };
                        prop_assert_eq!((p.first(), p.last()), (a, b));
                        prop_assert!(close(g.path_distance(p, &w).unwrap(), report.value(v)));
                    }
                    None => prop_assert!(report.value(v).is_infinite()),
                }
            }
        }
    }

    #[test]
    fn greedy_never_beats_the_label_engine(g in arb_graph(), w in arb_weights(), root in 0usize..9) {
        let root = VertexId(root % g.n_vertices());
        let full = LabelEngine::new(&g, &w).run(root).unwrap().report;
        let greedy = greedy_bellman_ford_plwd(&g, &w, root).unwrap();
        for v in 0..g.n_vertices() {
            let (f, gr) = (full.values[v], greedy.values[v]);
            prop_assert_eq!(f.is_finite(), gr.is_finite());
            if f.is_finite() {
                prop_assert!(gr >= f * (1.0 - 1e-12));
            }
        }
    }

    #[test]
    fn printed_frontier_never_undercuts(g in arb_graph(), w in arb_weights(), root in 0usize..9) {
        let root = VertexId(root % g.n_vertices());
        let changed = LabelEngine::new(&g, &w).frontier(FrontierRule::Changed).run(root).unwrap().report;
        let printed = LabelEngine::new(&g, &w).frontier(FrontierRule::Printed).run(root).unwrap().report;
        for (c, p) in changed.values.iter().zip(&printed.values) {
            prop_assert_eq!(c.is_finite(), p.is_finite());
            if c.is_finite() {
                prop_assert!(p >= c);
            }
        }
    }
}
