//! Named graph families.

use super::{Graph, IsoClasses};

/// The path on `n` vertices `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("clique")
}

pub fn complete_bipartite(s: usize, t: usize) -> Graph {
    Graph::new(s + t, (0..s).flat_map(|u| (0..t).map(move |v| (u, s + v)))).expect("biclique")
}

/// `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    complete_bipartite(1, k)
}

/// The `n x m` grid; vertex `(i, j)` is `i * m + j`.
pub fn grid(n: usize, m: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..m {
            let v = i * m + j;
            if j + 1 < m {
                edges.push((v, v + 1));
            }
            if i + 1 < n {
                edges.push((v, v + m));
            }
        }
    }
    Graph::new(n * m, edges).expect("grid")
}

/// Graph on `n` vertices whose edges are selected by the bits of `bits`, pairs
/// taken in lexicographic order.
pub fn from_bits(n: usize, bits: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs.enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, p)| p);
    Graph::new(n, edges).expect("bit graph")
}

/// Every labeled graph on `n` vertices (`2^(n(n-1)/2)` of them).
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(pairs < 32, "too many labeled graphs");
    (0..1u64 << pairs).map(move |bits| from_bits(n, bits))
}

/// One representative per isomorphism class on exactly `n` vertices.
pub fn all_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut classes = IsoClasses::new();
    for g in all_labeled_graphs(n) {
        classes.insert(g);
    }
    classes.into_vec()
}
