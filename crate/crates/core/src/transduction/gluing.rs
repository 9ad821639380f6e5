//! Gluing of non-copying interpretations over a vertex partition, and its
//! use for extracting subgraphs of star-colorable graphs.

use std::collections::{BTreeMap, BTreeSet};

use super::{image_on, realize_edges, ColoringWitness, Image, Interpretation, Pipeline, Stage};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph};
use crate::logic::Formula;

/// Parts are named by marks `V_1..V_n`; block `(i, j)` with `1 <= i <= j <= n`
/// holds the edge formula `eta_{i,j}` applied to `G[A_i, A_j]`, where
/// `A_k = V_k \ (V_1 u ... u V_{k-1})`. A missing block contributes no edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Gluing {
    pub parts: Vec<String>,
    pub blocks: BTreeMap<(usize, usize), Formula>,
}

impl Gluing {
    pub fn new(parts: Vec<String>) -> Self {
        Gluing { parts, blocks: BTreeMap::new() }
    }

    pub fn with_block(mut self, i: usize, j: usize, eta: Formula) -> Result<Self> {
        if !(1 <= i && i <= j && j <= self.parts.len()) {
            return Err(Error::InvalidArgument(format!(
                "block ({i},{j}) needs 1 <= i <= j <= {}",
                self.parts.len()
            )));
        }
        Interpretation::new(Formula::True, eta.clone())?;
        self.blocks.insert((i, j), eta);
        Ok(self)
    }
}

/// Applies a gluing. The result has vertex set `A_1 u ... u A_n` and the union
/// of the block edge sets; colors carry over.
pub fn glue(g: &ColoredGraph, gl: &Gluing) -> Result<Image> {
    let mut taken = BTreeSet::new();
    let mut a: Vec<BTreeSet<usize>> = Vec::new();
    for name in &gl.parts {
        let v = g.color(name).ok_or_else(|| Error::Precondition(format!("gluing mark `{name}` is missing")))?;
        a.push(v.difference(&taken).copied().collect());
        taken.extend(v.iter().copied());
    }
    let mut edges = BTreeSet::new();
    for (&(i, j), eta) in &gl.blocks {
        let (sub, map) = g.pair_subgraph(&a[i - 1], &a[j - 1])?;
        let all: Vec<usize> = sub.graph().vertices().collect();
        for (u, v) in realize_edges(&sub, eta, &all)? {
            let (u, v) = (map[u], map[v]);
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let kept: Vec<usize> = taken.into_iter().collect();
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    Ok(image_on(g, &kept, &edges))
}

/// Checks that `coloring` is proper and has no path on four vertices using
/// only two colors. The error carries the offending edge or path.
pub fn check_star_coloring(g: &Graph, coloring: &[usize]) -> Result<()> {
    if coloring.len() != g.n() {
        return Err(Error::InvalidArgument(format!("coloring has {} entries for {} vertices", coloring.len(), g.n())));
    }
    for (u, v) in g.edges() {
        if coloring[u] == coloring[v] {
            return Err(Error::InvalidStarColoring(vec![u, v]));
        }
    }
    for (b, c) in g.edges() {
        for (b, c) in [(b, c), (c, b)] {
            for &a in g.neighbors(b) {
                if a == c || coloring[a] != coloring[c] {
                    continue;
                }
                if let Some(&d) = g.neighbors(c).iter().find(|&&d| d != b && coloring[d] == coloring[b]) {
                    return Err(Error::InvalidStarColoring(vec![a, b, c, d]));
                }
            }
        }
    }
    Ok(())
}

/// Marks and pipeline recovering a subgraph from its host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneWitness {
    pub marks: ColoringWitness,
    /// `[ColorWitness(marks), Glue, Interpret((A(x), E(x,y)))]`.
    pub pipeline: Pipeline,
    /// The subgraph itself, on its vertices in increasing order.
    pub target: Graph,
}

/// Builds marks realizing the subgraph `(vertices, edges)` of `g` by a gluing
/// over the classes of a star coloring.
///
/// Part `V_i` is color class `i`. Any two classes induce a star forest, and in
/// a star forest the subgraph edges are exactly the edges between vertices
/// incident to a subgraph edge; `B_{i,j}` marks those vertices for the pair
/// of classes `(i, j)`. Mark `A` keeps the subgraph's vertices.
pub fn monotone_closure_witness(
    g: &Graph,
    vertices: &BTreeSet<usize>,
    edges: &[(usize, usize)],
    coloring: &[usize],
) -> Result<MonotoneWitness> {
    check_star_coloring(g, coloring)?;
    for &v in vertices {
        g.check_vertex(v)?;
    }
    for &(u, v) in edges {
        if !g.has_edge(u, v) || !vertices.contains(&u) || !vertices.contains(&v) {
            return Err(Error::Precondition(format!("({u},{v}) is not an edge of the subgraph of the host")));
        }
    }
    let classes: BTreeSet<usize> = coloring.iter().copied().collect();
    let index: BTreeMap<usize, usize> = classes.iter().enumerate().map(|(i, &c)| (c, i + 1)).collect();
    let mut marks = ColoringWitness::new();
    let part = |i: usize| format!("V{i}");
    for (&c, &i) in &index {
        marks.insert(part(i), (0..g.n()).filter(|&v| coloring[v] == c).collect());
    }
    let block = |i: usize, j: usize| format!("B{i}_{j}");
    let mut gluing = Gluing::new((1..=index.len()).map(part).collect());
    for &(u, v) in edges {
        let (i, j) = (index[&coloring[u]], index[&coloring[v]]);
        let (i, j) = (i.min(j), i.max(j));
        let name = block(i, j);
        let set = marks.entry(name.clone()).or_default();
        set.insert(u);
        set.insert(v);
        let eta = Formula::pred(&name, "x").and(Formula::pred(&name, "y")).and(Formula::edge("x", "y"));
        gluing = gluing.with_block(i, j, eta)?;
    }
    marks.insert("A".into(), vertices.clone());
    let pipeline = Pipeline::new(vec![
        Stage::ColorWitness(marks.clone()),
        Stage::Glue(gluing),
        Stage::Interpret(Interpretation::hereditary("A")),
    ]);
    let (target, _) = Graph::new(g.n(), edges.iter().copied())?.induced_subgraph(vertices)?;
    Ok(MonotoneWitness { marks, pipeline, target })
}
