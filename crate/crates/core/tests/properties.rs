use cospec::{
    canonical_form, canonical_labeling, char_poly, from_graph6, hong_bound, is_isomorphic, spectral_radius, to_graph6,
    Graph,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n_vertices();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trips(g in graph(70)) {
        let bytes = to_graph6(&g);
        prop_assert!(bytes.iter().all(|b| (63..=126).contains(b)));
        prop_assert_eq!(from_graph6(&bytes).unwrap(), g);
    }

    #[test]
    fn graph6_decoder_never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..40)) {
        if let Ok(g) = from_graph6(&bytes) {
            // anything accepted re-encodes to the same bytes, modulo the optional prefix
            let body = bytes.strip_prefix(b">>graph6<<").unwrap_or(&bytes);
            let body = body.strip_suffix(b"\n").unwrap_or(body);
            prop_assert_eq!(to_graph6(&g), body.to_vec());
        }
    }

    #[test]
    fn canonical_form_is_relabelling_invariant((g, perm) in graph_and_perm(16)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn canonical_form_is_isomorphic_to_input(g in graph(16)) {
        let form = canonical_form(&g).to_graph();
        prop_assert!(is_isomorphic(&g, &form));
        prop_assert_eq!(canonical_form(&form), canonical_form(&g));
    }

    #[test]
    fn labelling_is_consistent(g in graph(16)) {
        let lab = canonical_labeling(&g);
        let n = g.n_vertices();
        let position: Vec<usize> = (0..n).map(|v| lab.position_of(v)).collect();
        // moving every vertex to its canonical position reproduces the form
        let relabelled = g.relabel(&position).unwrap();
        prop_assert_eq!(relabelled, lab.form.to_graph());
        for v in 0..n {
            prop_assert_eq!(lab.vertex_at(lab.position_of(v)), v);
        }
        for gen in lab.automorphisms() {
            prop_assert_eq!(g.relabel(gen).unwrap(), g.clone());
        }
    }

    #[test]
    fn charpoly_is_relabelling_invariant((g, perm) in graph_and_perm(14)) {
        prop_assert_eq!(char_poly(&g), char_poly(&g.relabel(&perm).unwrap()));
    }

    #[test]
    fn low_coefficients_count_edges_and_triangles(g in graph(14)) {
        let p = char_poly(&g);
        prop_assert_eq!(p.edges().unwrap(), g.edge_count() as u64);
        if g.n_vertices() >= 3 {
            prop_assert_eq!(p.triangles().unwrap(), g.triangle_count() as u64);
        }
    }

    #[test]
    fn hong_inequality_holds(g in graph(12)) {
        prop_assume!(g.n_vertices() > 0);
        let bound = hong_bound(g.n_vertices(), g.edge_count(), g.min_degree()).unwrap();
        prop_assert!(spectral_radius(&g).unwrap() <= bound + 1e-9);
    }
}
