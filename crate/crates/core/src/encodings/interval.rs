//! Interval graphs are encoded in the class of interval graphs with a
//! bounded-quantifier interpretation: every vertex and every edge of `G`
//! becomes an interval, and two vertex intervals are joined when a common
//! neighbor leaves both of them with a private neighbor.

use serde::{Deserialize, Serialize};

use super::HostArtifact;
use crate::error::Result;
use crate::graph::{ColoredGraph, Graph};
use crate::logic::Formula;
use crate::transduction::{Interpretation, Pipeline};

/// Closed integer intervals with a tag each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalFamily {
    pub intervals: Vec<(String, i64, i64)>,
}

impl IntervalFamily {
    /// The intersection graph; vertex `i` is interval `i`.
    pub fn intersection_graph(&self) -> Graph {
        let iv = &self.intervals;
        let edges = (0..iv.len())
            .flat_map(|a| (a + 1..iv.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| iv[a].1 <= iv[b].2 && iv[b].1 <= iv[a].2);
        Graph::new(iv.len(), edges).expect("intersection graph")
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Vertex `i` (1-based) owns `I_i = [4i-4, 4i-1]` with private intervals
/// `L_i = [4i-4, 4i-3]` and `R_i = [4i-2, 4i-1]`; edge `ij` (`i < j`) is
/// `E_ij = [4i-2, 4j-3]`. The `I_i` come first, in vertex order.
pub fn interval_family(g: &Graph) -> IntervalFamily {
    let n = g.n() as i64;
    let mut intervals: Vec<(String, i64, i64)> = (1..=n).map(|i| (format!("I{i}"), 4 * i - 4, 4 * i - 1)).collect();
    for i in 1..=n {
        intervals.push((format!("L{i}"), 4 * i - 4, 4 * i - 3));
        intervals.push((format!("R{i}"), 4 * i - 2, 4 * i - 1));
    }
    for (u, v) in g.edges() {
        let (i, j) = (u as i64 + 1, v as i64 + 1);
        intervals.push((format!("E{i}_{j}"), 4 * i - 2, 4 * j - 3));
    }
    IntervalFamily { intervals }
}

/// `x != y & exists z (E(x,z) & E(y,z) & private(x,z) & private(y,z))`,
/// where `private(x,z)` says some neighbor of `x` other than `z` misses `z`.
fn eta() -> Formula {
    let private = |v: &str, t: &str| {
        Formula::exists(t, Formula::edge(v, t).and(Formula::neq(t, "z")).and(Formula::edge("z", t).not()))
    };
    let body = Formula::edge("x", "z").and(Formula::edge("y", "z")).and(private("x", "t")).and(private("y", "s"));
    Formula::neq("x", "y").and(Formula::exists("z", body))
}

pub fn encode_interval(g: &Graph) -> Result<HostArtifact> {
    let family = interval_family(g);
    let host = ColoredGraph::from(family.intersection_graph()).with_color("M", 0..g.n())?;
    let pipeline = Pipeline::interpretation(Interpretation::new(Formula::pred("M", "x"), eta())?);
    HostArtifact::new(host, pipeline, vec![], g.clone().into(), format!("graph on {} vertices", g.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn spec_examples() {
        let a = encode_interval(&complete(2)).unwrap();
        assert_eq!(a.host.n(), 7);
        encode_interval(&Graph::edgeless(2)).unwrap();
        encode_interval(&path(3)).unwrap();
        encode_interval(&Graph::edgeless(0)).unwrap();
    }

    #[test]
    fn consecutive_vertex_intervals_are_disjoint() {
        let f = interval_family(&Graph::edgeless(3));
        let h = f.intersection_graph();
        assert!(!h.has_edge(0, 1) && !h.has_edge(1, 2));
    }

    #[test]
    fn small_graphs_round_trip() {
        for g in all_graphs_up_to_iso(4) {
            encode_interval(&g).unwrap_or_else(|e| panic!("{g:?}: {e}"));
        }
    }

    #[test]
    fn witness_must_differ_from_the_common_neighbor() {
        // Without t != z, z = E_13 is its own private witness for I_2 and
        // joins I_2 with I_3.
        let g = Graph::new(4, [(0, 1), (0, 2)]).unwrap();
        let a = encode_interval(&g).unwrap();
        assert!(!a.image().unwrap().graph().has_edge(1, 2));
    }
}
