//! Graphs whose components have at most `n` vertices are encoded in edgeless
//! graphs: copy every host vertex `n` times, mark the clone clique with the
//! vertex names of a connected `n`-vertex graph containing the component,
//! keep the edges of that graph and delete the padding.

use std::collections::BTreeSet;

use super::HostArtifact;
use crate::error::{Error, Result};
use crate::graph::generators::all_graphs_up_to_iso;
use crate::graph::{isomorphism, ColoredGraph, Graph};
use crate::logic::Formula;
use crate::transduction::{ColoringWitness, Interpretation, Pipeline, Stage};

/// Connected graphs on exactly `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs_up_to_iso(n).into_iter().filter(Graph::is_connected).collect()
}

fn mark(i: usize, j: usize) -> String {
    format!("M{}_{}", i + 1, j + 1)
}

/// Encodes `g` from the edgeless graph on one vertex per component. With
/// `n = None` the largest component size is used.
pub fn encode_bounded_components(g: &Graph, n: Option<usize>) -> Result<HostArtifact> {
    let comps = g.components();
    let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
    let n = n.unwrap_or(largest.max(1));
    if largest > n {
        return Err(Error::Precondition(format!("a component has {largest} vertices, more than {n}")));
    }
    if n == 0 || n > 6 {
        return Err(Error::InvalidArgument(format!("component bound must be between 1 and 6, got {n}")));
    }
    let classes = connected_graphs(n);
    let mut marks = ColoringWitness::new();
    let mut used = BTreeSet::new();
    let mut kept = BTreeSet::new();
    for (h, comp) in comps.iter().enumerate() {
        // Pad the component with a path hanging from its first vertex.
        let (part, _) = g.induced_subgraph(&comp.iter().copied().collect())?;
        let c = comp.len();
        let pad = (c..n).map(|j| (if j == c { 0 } else { j - 1 }, j));
        let padded = Graph::new(n, part.edges().chain(pad))?;
        let (i, sigma) = classes
            .iter()
            .enumerate()
            .find_map(|(i, f)| isomorphism(&padded, f).map(|s| (i, s)))
            .expect("a connected graph on n vertices has a class");
        used.insert(i);
        for (j, &image) in sigma.iter().enumerate() {
            marks.entry(mark(i, image)).or_default().insert(h * n + j);
        }
        kept.extend((0..c).map(|j| h * n + j));
    }
    let eta = Formula::any(used.iter().flat_map(|&i| {
        classes[i].edges().flat_map(move |(j, k)| {
            [(j, k), (k, j)].map(|(a, b)| Formula::pred(&mark(i, a), "x").and(Formula::pred(&mark(i, b), "y")).and(Formula::edge("x", "y")))
        })
    }));
    let pipeline = Pipeline::new(vec![Stage::Copy { k: n }, Stage::ColorWitness(marks), Stage::Interpret(Interpretation::new(Formula::True, eta)?)])
        .then(Pipeline::hereditary("M"));
    let witness: ColoringWitness = [("M".to_string(), kept)].into();
    let host = ColoredGraph::from(Graph::edgeless(comps.len()));
    HostArtifact::new(host, pipeline, vec![witness], g.clone().into(), format!("graph with components of at most {n} vertices"))
}
