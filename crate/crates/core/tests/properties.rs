//! Property tests across modules, checked against the naive oracles in
//! `common`.

mod common;

use proptest::prelude::*;

use common::{induced_subgraph_classes, plane_drawing, same_rank_q_sentences};
use fotrans::encodings::*;
use fotrans::games::duplicator_wins;
use fotrans::graph::generators::{from_bits, path};
use fotrans::graph::{colored_isomorphism, is_isomorphic};
use fotrans::params::{pathwidth, star_chromatic_number};
use fotrans::transduction::{enumerate_images, Pipeline, DEFAULT_BUDGET};
use fotrans::{ColoredGraph, Graph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (Just(n), 0u64..1 << pairs).prop_map(|(n, bits)| from_bits(n, bits))
    })
}

fn caterpillar() -> impl Strategy<Value = CompressedCaterpillar> {
    (1usize..=4, 0usize..=2).prop_flat_map(|(s, k)| {
        let spine_colors = proptest::collection::vec(proptest::collection::btree_set(0..s, 0..=s), k);
        let leaves = proptest::collection::vec((0..s, 0u32..1 << k), 0..=6);
        (Just(s), Just(k), spine_colors, leaves).prop_map(|(s, k, spine_colors, leaves)| {
            let palette: Vec<String> = (0..k).map(|i| format!("C{i}")).collect();
            let mut spine = ColoredGraph::from(path(s));
            for (name, set) in palette.iter().zip(spine_colors) {
                spine.add_color(name.clone(), set).unwrap();
            }
            let mut f = Multiplicities::new();
            for key in leaves {
                *f.entry(key).or_default() += 1;
            }
            CompressedCaterpillar::new(spine, palette, f).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interval_encoding_round_trips(g in graph(7)) {
        let a = encode_interval(&g).unwrap();
        prop_assert!(is_isomorphic(a.image().unwrap().graph(), &g));
    }

    #[test]
    fn bundles_reload(g in graph(5)) {
        let a = encode_interval(&g).unwrap();
        let text = serde_json::to_string(&a.to_bundle_json()).unwrap();
        let b = HostArtifact::from_bundle_json(&text).unwrap();
        prop_assert_eq!(&b.host, &a.host);
        prop_assert_eq!(&b.pipeline, &a.pipeline);
        prop_assert_eq!(serde_json::to_string(&b.to_bundle_json()).unwrap(), text);
    }

    #[test]
    fn planar_hosts_are_plane(g in graph(7)) {
        prop_assume!(pathwidth(&g).unwrap() <= 3);
        let p = encode_pathwidth_planar(&g, None).unwrap();
        prop_assert!(plane_drawing(p.artifact.host.graph(), &p.coords));
        prop_assert!(g.is_subgraph_of(&p.k));
    }

    #[test]
    fn components_round_trip(g in graph(8)) {
        let largest = g.components().iter().map(Vec::len).max().unwrap_or(0);
        prop_assume!(largest <= 4);
        encode_bounded_components(&g, None).unwrap();
    }

    #[test]
    fn cubic_hosts(g in graph(6)) {
        let d = g.max_degree();
        let e = encode_cubic(&g, d).unwrap();
        prop_assert!(e.host.vertices().all(|v| e.host.degree(v) == 3));
    }

    #[test]
    fn caterpillars_compress_and_encode(cc in caterpillar()) {
        let g = cc.expand().unwrap();
        let back = compress_caterpillar(&g).unwrap();
        prop_assert!(colored_isomorphism(&back.expand().unwrap(), &g).is_some());
        let a = encode_caterpillar_in_path(&cc, g.graph().max_degree().max(1)).unwrap();
        prop_assert!(colored_isomorphism(&a.image().unwrap(), &g).is_some());
    }

    #[test]
    fn hereditary_enumeration_matches_subsets(g in graph(6)) {
        let images = enumerate_images(&g.clone().into(), &Pipeline::hereditary("M"), DEFAULT_BUDGET).unwrap();
        let oracle = induced_subgraph_classes(&g);
        prop_assert_eq!(images.len(), oracle.len());
        prop_assert!(oracle.iter().all(|o| images.iter().any(|i| is_isomorphic(i, o))));
    }

    #[test]
    fn star_colorings_have_no_bicolored_p4(g in graph(8)) {
        let (k, c) = star_chromatic_number(&g).unwrap();
        prop_assert!(c.iter().all(|&x| x < k.max(1)));
        prop_assert!(g.edges().all(|(u, v)| c[u] != c[v]));
        // Independent enumeration of paths a-b-c-d.
        for a in g.vertices() {
            for &b in g.neighbors(a) {
                for &cc in g.neighbors(b).iter().filter(|&&x| x != a) {
                    for &d in g.neighbors(cc).iter().filter(|&&x| x != a && x != b) {
                        prop_assert!(!(c[a] == c[cc] && c[b] == c[d]), "bicolored path {a}-{b}-{cc}-{d}");
                    }
                }
            }
        }
    }

    #[test]
    fn games_match_the_sentence_oracle(g in graph(4), h in graph(4), q in 0usize..=2) {
        let (g, h) = (ColoredGraph::from(g), ColoredGraph::from(h));
        prop_assert_eq!(duplicator_wins(&g, &h, q).unwrap(), same_rank_q_sentences(&g, &h, q));
    }
}
