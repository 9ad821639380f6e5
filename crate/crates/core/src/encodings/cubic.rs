//! Graphs of bounded degree are induced subgraphs of odd powers of cubic
//! graphs. Pad `G` to a `D'`-regular graph with `D' = 3 * 2^(p-1)`, then
//! replace every vertex by a tree `Y` whose `D'` free leaf slots take the
//! vertex's edges. Roots of adjacent vertices end up at distance `2p - 1`;
//! all other pairs of roots are farther apart.

use std::collections::BTreeSet;

use super::HostArtifact;
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph};
use crate::logic::Formula;
use crate::transduction::{ColoringWitness, Interpretation, Pipeline, Stage};

/// Result of [`encode_cubic`].
#[derive(Debug, Clone)]
pub struct CubicEncoding {
    /// The cubic host `H_G`.
    pub host: Graph,
    pub p: usize,
    /// The regular supergraph `G'`; its first `n` vertices are those of `G`.
    pub regular: Graph,
    /// Root of the tree replacing vertex `v` of `G'`, for every `v`.
    pub roots: Vec<usize>,
    /// Host marked by nothing, pipeline `[ColorSearch R, Interpret]` and the
    /// roots of `G` as witness.
    pub artifact: HostArtifact,
}

/// A `d`-regular graph containing `g` as an induced subgraph on its first
/// `n` vertices: repeatedly add a mirror copy and join every deficient
/// vertex to its mirror.
pub fn regular_supergraph(g: &Graph, d: usize) -> Result<Graph> {
    if g.max_degree() > d {
        return Err(Error::Precondition(format!("maximum degree {} exceeds {d}", g.max_degree())));
    }
    let mut cur = g.clone();
    while cur.vertices().any(|v| cur.degree(v) < d) {
        let n = cur.n();
        if n > 1 << 16 {
            return Err(Error::BudgetExceeded { log2_size: (n as f64).log2() + 1.0, budget: 1 << 16 });
        }
        let (mut doubled, _) = cur.disjoint_union(&cur);
        let mirrors: Vec<(usize, usize)> = cur.vertices().filter(|&v| cur.degree(v) < d).map(|v| (v, v + n)).collect();
        doubled = Graph::new(2 * n, doubled.edges().chain(mirrors))?;
        cur = doubled;
    }
    Ok(cur)
}

/// Least `p >= 1` with `3 * 2^(p-1) >= d`.
fn exponent(d: usize) -> usize {
    let mut p = 1;
    while 3 << (p - 1) < d {
        p += 1;
    }
    p
}

pub fn encode_cubic(g: &Graph, d: usize) -> Result<CubicEncoding> {
    if g.max_degree() > d {
        return Err(Error::Precondition(format!("maximum degree {} exceeds the bound {d}", g.max_degree())));
    }
    let p = exponent(d);
    let dp = 3 << (p - 1);
    let regular = regular_supergraph(g, dp)?;
    // Tree Y: a root with three children, then binary down to depth p - 1.
    // Every leaf has two free slots (the root has three when p = 1).
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    let mut slots: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for _ in regular.vertices() {
        let root = next;
        next += 1;
        roots.push(root);
        let mut level = vec![root];
        for depth in 1..p {
            let fan = if depth == 1 { 3 } else { 2 };
            let mut below = Vec::new();
            for &u in &level {
                for _ in 0..fan {
                    edges.push((u, next));
                    below.push(next);
                    next += 1;
                }
            }
            level = below;
        }
        let per_leaf = if p == 1 { 3 } else { 2 };
        slots.push(level.iter().flat_map(|&l| std::iter::repeat_n(l, per_leaf)).collect());
    }
    let mut used = vec![0; regular.n()];
    for (u, v) in regular.edges() {
        edges.push((slots[u][used[u]], slots[v][used[v]]));
        used[u] += 1;
        used[v] += 1;
    }
    let host = Graph::new(next, edges)?;
    let r = 2 * p - 1;
    let witness: ColoringWitness = [("R".to_string(), roots[..g.n()].iter().copied().collect::<BTreeSet<_>>())].into();
    let eta = Formula::neq("x", "y").and(Formula::dist_le("x", "y", r));
    let pipeline = Pipeline::new(vec![
        Stage::ColorSearch { colors: vec!["R".into()] },
        Stage::Interpret(Interpretation::new(Formula::pred("R", "x"), eta)?),
    ]);
    let artifact = HostArtifact::new(ColoredGraph::from(host.clone()), pipeline, vec![witness], g.clone().into(), format!("graph of maximum degree at most {d}"))?;
    let enc = CubicEncoding { host, p, regular, roots, artifact };
    enc.verify(g)?;
    Ok(enc)
}

impl CubicEncoding {
    /// Checks that the host is cubic and that roots of `G` are within
    /// distance `2p - 1` exactly when adjacent in `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if let Some(v) = self.host.vertices().find(|&v| self.host.degree(v) != 3) {
            return Err(Error::Verification(format!("host vertex {v} has degree {}", self.host.degree(v))));
        }
        let r = 2 * self.p - 1;
        for u in g.vertices() {
            let dist = self.host.bfs(&[self.roots[u]], Some(r));
            for v in g.vertices().filter(|&v| v != u) {
                if dist[self.roots[v]].is_at_most(r) != g.has_edge(u, v) {
                    return Err(Error::Verification(format!("roots of {u} and {v} violate the distance rule")));
                }
            }
        }
        Ok(())
    }
}
