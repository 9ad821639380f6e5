use std::collections::BTreeSet;

use super::generators::*;
use super::*;

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

#[test]
fn build_graph_examples() {
    let empty = Graph::new(0, []).unwrap();
    assert_eq!((empty.n(), empty.edge_count()), (0, 0));
    let k2 = Graph::new(2, [(0, 1), (1, 0)]).unwrap();
    assert_eq!(k2.edge_count(), 1);
    let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    assert_eq!(p3, path(3));
}

#[test]
fn build_graph_errors() {
    assert_eq!(Graph::new(2, [(0, 2)]), Err(Error::EndpointOutOfRange(0, 2, 2)));
    assert_eq!(Graph::new(2, [(1, 1)]), Err(Error::SelfLoop(1)));
}

#[test]
fn disjoint_union_examples() {
    let (two_k2, shift) = complete(2).disjoint_union(&complete(2));
    assert_eq!((two_k2.n(), two_k2.edge_count()), (4, 2));
    assert_eq!(shift, vec![2, 3]);
    let g = cycle(5);
    assert_eq!(g.disjoint_union(&Graph::edgeless(0)).0, g);
    let (u, _) = path(2).disjoint_union(&path(3));
    let sizes: Vec<usize> = u.components().iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![2, 3]);
}

#[test]
fn complete_join_examples() {
    let apex = complete(1).complete_join(&path(3));
    assert_eq!(apex.degree(0), 3);
    assert_eq!(apex.edge_count(), 5);
    assert_eq!(Graph::edgeless(0).complete_join(&path(4)), path(4));
    assert_eq!(complete(2).complete_join(&complete(2)), complete(4));
}

#[test]
fn power_examples() {
    assert_eq!(path(5).power(1).unwrap(), path(5));
    let p4sq = path(4).power(2).unwrap();
    let expected = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)]).unwrap();
    assert_eq!(p4sq, expected);
    assert_eq!(path(3).power(3).unwrap(), complete(3));
    assert!(path(3).power(0).is_err());
}

#[test]
fn subgraph_examples() {
    let (k, map) = complete(3).induced_subgraph(&set(&[0, 1])).unwrap();
    assert_eq!(k, complete(2));
    assert_eq!(map, vec![0, 1]);
    let (c, _) = cycle(4).pair_subgraph(&set(&[0, 2]), &set(&[1, 3])).unwrap();
    assert_eq!(c, cycle(4));
    let (e, _) = cycle(5).pair_subgraph(&set(&[]), &set(&[])).unwrap();
    assert_eq!(e.n(), 0);
    assert!(cycle(4).induced_subgraph(&set(&[7])).is_err());
}

#[test]
fn pair_subgraph_drops_inner_edges() {
    // In K3 with A = {0}, B = {1, 2} the edge 12 lies inside B only.
    let (g, _) = complete(3).pair_subgraph(&set(&[0]), &set(&[1, 2])).unwrap();
    assert_eq!(g.edge_count(), 2);
    assert!(!g.has_edge(1, 2));
}

#[test]
fn ball_examples() {
    let (b, map) = path(5).ball(&set(&[2]), 1).unwrap();
    assert_eq!(b, path(3));
    assert_eq!(map, vec![1, 2, 3]);
    let (b0, _) = cycle(6).ball(&set(&[4]), 0).unwrap();
    assert_eq!(b0.n(), 1);
    let (full, _) = cycle(6).ball(&set(&[0]), 3).unwrap();
    assert_eq!(full, cycle(6));
    assert!(path(3).ball(&set(&[]), 1).is_err());
}

#[test]
fn distance_examples() {
    assert_eq!(path(4).distance(0, 3).unwrap(), Distance::Finite(3));
    assert_eq!(cycle(5).distance(2, 2).unwrap(), Distance::Finite(0));
    assert_eq!(Graph::edgeless(2).distance(0, 1).unwrap(), Distance::Infinite);
    assert!(!Distance::Infinite.is_at_most(usize::MAX));
}

#[test]
fn isomorphism_examples() {
    let c2p2 = Graph::new(4, [(0, 1), (2, 3), (0, 2), (1, 3)]).unwrap();
    assert!(is_isomorphic(&cycle(4), &c2p2));
    assert!(!is_isomorphic(&path(3), &complete(3)));
    assert!(is_isomorphic(&grid(2, 3), &grid(2, 3)));
}

#[test]
fn colored_subgraph_keeps_colors() {
    let g = ColoredGraph::from(path(4)).with_color("M", [1, 3]).unwrap();
    let (sub, map) = g.induced_subgraph(&set(&[1, 2, 3])).unwrap();
    assert_eq!(map, vec![1, 2, 3]);
    assert_eq!(sub.color("M").unwrap(), &set(&[0, 2]));
}

#[test]
fn duplicate_color_rejected() {
    let g = ColoredGraph::from(path(2)).with_color("M", [0]).unwrap();
    assert!(matches!(g.with_color("M", [1]), Err(Error::DuplicateColor(_))));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (Just(n), 0..(1u64 << pairs)).prop_map(|(n, bits)| from_bits(n, bits))
        })
    }

    proptest! {
        #[test]
        fn iso_is_reflexive_and_symmetric_with_valid_witness(g in small_graph(7), seed in any::<u64>()) {
            let n = g.n();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = g.relabel(&perm);
            let fwd = isomorphism(&g, &h).expect("relabeling is isomorphic");
            let back = isomorphism(&h, &g).expect("symmetry");
            for u in 0..n {
                for v in 0..n {
                    prop_assert_eq!(g.has_edge(u, v), h.has_edge(fwd[u], fwd[v]));
                    prop_assert_eq!(h.has_edge(u, v), g.has_edge(back[u], back[v]));
                }
            }
            prop_assert!(is_isomorphic(&g, &g));
        }

        #[test]
        fn powers_are_nested(g in small_graph(8), k in 1usize..=4) {
            let a = g.power(k).unwrap();
            let b = g.power(k + 1).unwrap();
            prop_assert!(a.is_subgraph_of(&b));
        }

        #[test]
        fn balls_grow_to_the_component(g in small_graph(8), v in 0usize..8) {
            prop_assume!(v < g.n());
            let center = set(&[v]);
            let ecc = g.bfs(&[v], None).into_iter().filter_map(Distance::finite).max().unwrap();
            let mut prev = 0;
            for r in 0..=ecc + 1 {
                let size = g.ball_vertices(&center, r).unwrap().len();
                prop_assert!(size >= prev);
                prev = size;
            }
            let comp = g.components().into_iter().find(|c| c.contains(&v)).unwrap();
            prop_assert_eq!(g.ball_vertices(&center, ecc).unwrap().len(), comp.len());
            if g.is_connected() {
                prop_assert_eq!(prev, g.n());
            }
        }

        #[test]
        fn disjoint_union_assoc_and_comm(a in small_graph(6), b in small_graph(6), c in small_graph(6)) {
            let ab = a.disjoint_union(&b).0;
            let ba = b.disjoint_union(&a).0;
            prop_assert!(is_isomorphic(&ab, &ba));
            let left = ab.disjoint_union(&c).0;
            let right = a.disjoint_union(&b.disjoint_union(&c).0).0;
            prop_assert!(is_isomorphic(&left, &right));
        }
    }
}
