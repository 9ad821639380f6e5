//! JSON and DOT forms of colored graphs.
//!
//! The JSON shape is `{"n": 3, "edges": [[0,1],[1,2]], "colors": {"M": [0]}}`.
//! `colors` may be omitted on input. Output is normalized: edges sorted with
//! `u < v`, color sets sorted.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ColoredGraph, Graph};
use crate::error::Result;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub colors: BTreeMap<String, Vec<usize>>,
}

impl From<&ColoredGraph> for GraphJson {
    fn from(g: &ColoredGraph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.graph().edges().map(|(u, v)| [u, v]).collect(),
            colors: g.colors().iter().map(|(k, s)| (k.clone(), s.iter().copied().collect())).collect(),
        }
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect(), colors: BTreeMap::new() }
    }
}

impl TryFrom<GraphJson> for ColoredGraph {
    type Error = crate::Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let graph = Graph::new(j.n, j.edges.iter().map(|e| (e[0], e[1])))?;
        let colors = j.colors.into_iter().map(|(k, v)| (k, v.into_iter().collect::<BTreeSet<_>>())).collect();
        ColoredGraph::new(graph, colors)
    }
}

pub fn from_json(text: &str) -> Result<ColoredGraph> {
    let raw: GraphJson = serde_json::from_str(text)?;
    raw.try_into()
}

pub fn to_json(g: &ColoredGraph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph json")
}

pub fn to_json_pretty(g: &ColoredGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from(g)).expect("graph json")
}

/// Graphviz rendering; colors appear as a `colors` attribute and as the label.
pub fn to_dot(g: &ColoredGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.graph().vertices() {
        let names: Vec<&str> = g.colors_of(v).into_iter().collect();
        if names.is_empty() {
            let _ = writeln!(out, "  {v};");
        } else {
            let joined = names.join(",");
            let _ = writeln!(out, "  {v} [colors=\"{joined}\", label=\"{v}:{joined}\"];");
        }
    }
    for (u, v) in g.graph().edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
