//! Property tests: relabelling, spine symmetries, text round trips and
//! logical identities that every component must respect.

use bookcross::bookdraw::{cr1_exact, cr2_exact, crossings, BookDrawing};
use bookcross::checker::{model_check, Engine, EvalBudget};
use bookcross::graph::{emit_graph6, parse_graph6, Graph};
use bookcross::mso::{parse_formula, random_formula, Formula};
use bookcross::treewidth::treewidth_exact;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let edges: Vec<_> = pairs
                    .zip(bits)
                    .filter(|(_, b)| *b)
                    .map(|(p, _)| p)
                    .collect();
                Graph::from_edges(n, &edges).unwrap()
            },
        )
    })
}

/// A graph together with a relabelling of its vertices.
fn relabelled(max_n: usize) -> impl Strategy<Value = (Graph, Graph)> {
    graph(max_n).prop_flat_map(|g| {
        let id: Vec<usize> = (0..g.n()).collect();
        Just(id)
            .prop_shuffle()
            .prop_map(move |perm| (g.clone(), g.permuted(&perm)))
    })
}

fn formula(rank: usize) -> impl Strategy<Value = Formula> {
    any::<u64>().prop_map(move |seed| random_formula(&mut StdRng::seed_from_u64(seed), rank))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn graph6_round_trip(g in graph(12)) {
        let back = parse_graph6(&emit_graph6(&g)).unwrap();
        prop_assert_eq!(back.n(), g.n());
        let sorted = |h: &Graph| {
            let mut es = h.edges().to_vec();
            es.sort();
            es
        };
        prop_assert_eq!(sorted(&back), sorted(&g));
    }

    #[test]
    fn crossings_ignore_rotation_and_reflection(g in graph(7), turn in 0usize..7, pages in proptest::collection::vec(0u8..2, 21)) {
        let spine: Vec<usize> = (0..g.n()).collect();
        let d = BookDrawing::two_page(spine.clone(), pages[..g.m()].to_vec());
        let base = crossings(&g, &d).unwrap();
        let mut rotated = spine.clone();
        if !rotated.is_empty() {
            rotated.rotate_left(turn % g.n());
        }
        let mut reflected = spine;
        reflected.reverse();
        for s in [rotated, reflected] {
            let e = BookDrawing::two_page(s, d.pages.clone());
            prop_assert_eq!(crossings(&g, &e).unwrap(), base);
        }
    }

    #[test]
    fn crossing_numbers_ignore_labels((g, h) in relabelled(6)) {
        let (a1, a2) = (cr1_exact(&g).unwrap().0, cr2_exact(&g).unwrap().0);
        prop_assert_eq!(a1, cr1_exact(&h).unwrap().0);
        prop_assert_eq!(a2, cr2_exact(&h).unwrap().0);
        prop_assert!(a2 <= a1);
    }

    #[test]
    fn treewidth_ignores_labels((g, h) in relabelled(8)) {
        let (w, td) = treewidth_exact(&g).unwrap();
        prop_assert!(td.check(&g).is_ok());
        prop_assert_eq!(w, td.width());
        prop_assert_eq!(w, treewidth_exact(&h).unwrap().0);
    }

    #[test]
    fn formula_text_round_trip(f in formula(3)) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn negation_flips_the_verdict(f in formula(2), g in graph(5)) {
        let b = EvalBudget::default();
        let yes = model_check(&g, &f, &b).unwrap();
        prop_assert_eq!(model_check(&g, &Formula::not(f), &b).unwrap(), !yes);
    }

    #[test]
    fn verdicts_ignore_labels_and_engines(f in formula(2), (g, h) in relabelled(5)) {
        let auto = EvalBudget::default();
        let naive = EvalBudget::default().with_engine(Engine::Naive);
        let v = model_check(&g, &f, &naive).unwrap();
        prop_assert_eq!(model_check(&g, &f, &auto).unwrap(), v);
        prop_assert_eq!(model_check(&h, &f, &auto).unwrap(), v);
    }
}
