use proptest::prelude::*;

use ribbon_core::canon::{canonical_form, is_equivalent};
use ribbon_core::duality::{geometric_dual, partial_dual, partial_dual_sequential};
use ribbon_core::io::{from_json, parse, parse_graph, serialize, serialize_graph, to_json, GraphDocument};
use ribbon_core::topology::{euler_genus, face_count, is_orientable, is_orientable_by_double_cover};
use ribbon_core::verify::corpus::graph_from_permutation;
use ribbon_core::verify::oracles::{flag_euler_genus, flag_face_count, flag_orientable};
use ribbon_core::{from_arrow_presentation, to_arrow_presentation, EdgeSubset, RibbonGraph, Sign};

/// Random connected-or-not graphs: a random permutation of the darts gives
/// the rotations, plus independent signs.
fn graphs(max_edges: usize) -> impl Strategy<Value = RibbonGraph> {
    (0..=max_edges).prop_flat_map(|e| {
        let darts: Vec<usize> = (0..2 * e).collect();
        (
            Just(darts).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), 2 * e),
            proptest::collection::vec(any::<bool>(), e),
        )
            .prop_map(move |(order, cuts, twists)| {
                // Cut the shuffled darts into cycles at the marked positions.
                let mut next = vec![0; 2 * e];
                let mut start = 0;
                for i in 0..order.len() {
                    let last = i + 1 == order.len() || cuts[i];
                    next[order[i]] = if last { order[start] } else { order[i + 1] };
                    if last {
                        start = i + 1;
                    }
                }
                let signs: Vec<Sign> = twists.iter().map(|&t| if t { Sign::Minus } else { Sign::Plus }).collect();
                graph_from_permutation(&next, &signs)
            })
    })
}

fn graph_and_subsets(max_edges: usize) -> impl Strategy<Value = (RibbonGraph, EdgeSubset, EdgeSubset)> {
    graphs(max_edges).prop_flat_map(|g| {
        let e = g.num_edges();
        (Just(g), 0..1u64 << e, 0..1u64 << e)
            .prop_map(move |(g, a, b)| (g, EdgeSubset::from_mask(e, a), EdgeSubset::from_mask(e, b)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn text_round_trip(g in graphs(8)) {
        let text = serialize_graph(&g, Some("g"));
        let doc = parse(&text).unwrap();
        prop_assert_eq!(serialize(&doc), text.clone());
        prop_assert_eq!(doc.to_graph().unwrap(), g.clone());
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn json_round_trip(g in graphs(8)) {
        let doc = GraphDocument::from_graph(&g, None);
        let back = from_json(&to_json(&doc).to_string()).unwrap();
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn arrow_round_trip(g in graphs(8)) {
        let h = from_arrow_presentation(&to_arrow_presentation(&g)).unwrap();
        prop_assert!(is_equivalent(&g, &h));
        let doc = GraphDocument::from_arrows(&to_arrow_presentation(&g));
        let reparsed = parse(&serialize(&doc)).unwrap();
        prop_assert_eq!(&reparsed, &doc);
        prop_assert!(is_equivalent(&reparsed.to_graph().unwrap(), &g));
    }

    #[test]
    fn canonical_form_ignores_presentation(g in graphs(7), v in any::<prop::sample::Index>(), k in 0usize..8, seed in any::<u64>()) {
        let code = canonical_form(&g);
        prop_assert_eq!(canonical_form(&g.reflect()), code.clone());
        prop_assert_eq!(canonical_form(&g.relabel_edges(|l| format!("z{l}")).unwrap()), code.clone());
        prop_assert_eq!(canonical_form(&g.to_spec().build().unwrap()), code.clone());
        if g.num_vertices() > 0 {
            let v = v.index(g.num_vertices());
            prop_assert_eq!(canonical_form(&g.flip_vertex(v)), code.clone());
            let d = g.degree(v).max(1);
            prop_assert_eq!(canonical_form(&g.rotate_vertex(v, k % d)), code.clone());
            let order: Vec<usize> = (0..g.num_vertices()).rev().collect();
            prop_assert_eq!(canonical_form(&g.permute_vertices(&order)), code.clone());
        }
        let e = g.num_edges();
        if e > 0 {
            let order: Vec<usize> = (0..e).map(|i| (i + seed as usize) % e).collect();
            prop_assert_eq!(canonical_form(&g.permute_edges(&order)), code.clone());
            prop_assert_eq!(canonical_form(&g.swap_ends(seed as usize % e)), code.clone());
        }
        prop_assert!(is_equivalent(&code.to_graph(), &g));
    }

    #[test]
    fn genus_agrees_with_flag_orbits(g in graphs(8)) {
        prop_assert_eq!(euler_genus(&g), flag_euler_genus(&g));
        prop_assert_eq!(face_count(&g), flag_face_count(&g));
        prop_assert_eq!(is_orientable(&g), flag_orientable(&g));
        prop_assert_eq!(is_orientable(&g), is_orientable_by_double_cover(&g));
    }

    #[test]
    fn partial_duals_compose((g, a, b) in graph_and_subsets(7)) {
        let ga = partial_dual(&g, &a);
        prop_assert!(is_equivalent(&partial_dual(&ga, &a), &g));
        prop_assert!(is_equivalent(&partial_dual(&ga, &b), &partial_dual(&g, &a.symmetric_difference(&b))));
        prop_assert_eq!(is_orientable(&ga), is_orientable(&g));
        let order: Vec<usize> = a.iter().collect();
        prop_assert!(is_equivalent(&partial_dual_sequential(&g, &order), &ga));
        prop_assert!(is_equivalent(&partial_dual(&g, &g.all_edges()), &geometric_dual(&g)));
    }
}
