//! Finite simple graphs, colored graphs and the elementary graph algebra.
//!
//! Vertices are the dense identifiers `0..n`. Operations that change the
//! vertex set return an explicit map from new vertices to old ones instead of
//! carrying structured ids, so every graph stays in canonical form.

mod iso;

pub mod generators;
pub mod io;

#[cfg(test)]
mod tests;

pub use iso::{colored_isomorphism, is_isomorphic, isomorphism, IsoClasses};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Shortest-path length, with unreachable pairs kept apart from every
/// finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_at_most(self, r: usize) -> bool {
        matches!(self, Distance::Finite(d) if d <= r)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// A finite simple undirected graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Builds a graph, deduplicating repeated pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EndpointOutOfRange(u, v, n));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { n, adj })
    }

    /// The edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n] }
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        Graph { n: adj.len(), adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Dense adjacency matrix, for hot loops.
    pub fn matrix(&self) -> AdjMatrix {
        let mut bits = vec![false; self.n * self.n];
        for (u, v) in self.edges() {
            bits[u * self.n + v] = true;
            bits[v * self.n + u] = true;
        }
        AdjMatrix { n: self.n, bits }
    }

    /// Disjoint union; the second vector maps vertices of `other` to their
    /// ids in the union.
    pub fn disjoint_union(&self, other: &Graph) -> (Graph, Vec<usize>) {
        let shift = self.n;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + shift).collect()));
        (Graph::from_sorted_adjacency(adj), (0..other.n).map(|v| v + shift).collect())
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn complete_join(&self, other: &Graph) -> Graph {
        let (union, _) = self.disjoint_union(other);
        let shift = self.n;
        let cross = (0..self.n).flat_map(|u| (0..other.n).map(move |v| (u, v + shift)));
        Graph::new(union.n, union.edges().chain(cross)).expect("join of valid graphs")
    }

    pub fn complement(&self) -> Graph {
        let m = self.matrix();
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !m.get(u, v));
        Graph::new(self.n, edges).expect("complement of a valid graph")
    }

    /// `uv` is an edge of the `k`-th power iff `1 <= dist(u, v) <= k`.
    pub fn power(&self, k: usize) -> Result<Graph> {
        if k == 0 {
            return Err(Error::InvalidArgument("graph power needs k >= 1".into()));
        }
        let mut edges = Vec::new();
        for u in 0..self.n {
            let dist = self.bfs(&[u], Some(k));
            for (v, d) in dist.into_iter().enumerate() {
                if v > u && d.is_at_most(k) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, edges)
    }

    /// The subgraph on `a ∪ b` whose edges are the edges of `self` with one end
    /// in `a` and the other in `b`. Vertices are renumbered in increasing
    /// order; the returned map sends new ids to old ones.
    pub fn pair_subgraph(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Result<(Graph, Vec<usize>)> {
        for &v in a.iter().chain(b) {
            self.check_vertex(v)?;
        }
        let keep: Vec<usize> = a.union(b).copied().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            for &v in &self.adj[u] {
                let j = index[v];
                if j == usize::MAX || j <= i {
                    continue;
                }
                let crosses = (a.contains(&u) && b.contains(&v)) || (b.contains(&u) && a.contains(&v));
                if crosses {
                    edges.push((i, j));
                }
            }
        }
        Ok((Graph::new(keep.len(), edges)?, keep))
    }

    pub fn induced_subgraph(&self, s: &BTreeSet<usize>) -> Result<(Graph, Vec<usize>)> {
        self.pair_subgraph(s, s)
    }

    /// BFS distances from a set of sources, optionally stopping at `limit`
    /// (vertices further away are reported as infinite).
    pub fn bfs(&self, sources: &[usize], limit: Option<usize>) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == Distance::Infinite {
                dist[s] = Distance::Finite(0);
                queue.push_back((s, 0usize));
            }
        }
        while let Some((u, d)) = queue.pop_front() {
            if limit.is_some_and(|l| d >= l) {
                continue;
            }
            for &v in &self.adj[u] {
                if dist[v] == Distance::Infinite {
                    dist[v] = Distance::Finite(d + 1);
                    queue.push_back((v, d + 1));
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Distance> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs(&[u], None)[v])
    }

    pub fn all_distances(&self) -> Vec<Vec<Distance>> {
        (0..self.n).map(|u| self.bfs(&[u], None)).collect()
    }

    /// Vertex set of the radius-`r` ball around `u`, as a sorted set.
    pub fn ball_vertices(&self, u: &BTreeSet<usize>, r: usize) -> Result<BTreeSet<usize>> {
        for &v in u {
            self.check_vertex(v)?;
        }
        let sources: Vec<usize> = u.iter().copied().collect();
        Ok(self
            .bfs(&sources, Some(r))
            .into_iter()
            .enumerate()
            .filter(|(_, d)| d.is_at_most(r))
            .map(|(v, _)| v)
            .collect())
    }

    /// The subgraph induced by the vertices at distance at most `r` from `u`.
    pub fn ball(&self, u: &BTreeSet<usize>, r: usize) -> Result<(Graph, Vec<usize>)> {
        if u.is_empty() {
            return Err(Error::InvalidArgument("ball needs a nonempty center set".into()));
        }
        let vs = self.ball_vertices(u, r)?;
        self.induced_subgraph(&vs)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Graph::new(self.n, self.edges().map(|(u, v)| (perm[u], perm[v]))).expect("relabeling is a bijection")
    }

    /// Whether every edge of `self` is an edge of `other` (same vertex set).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges().all(|(u, v)| other.has_edge(u, v))
    }
}

/// Row-major boolean adjacency matrix.
#[derive(Clone, Debug)]
pub struct AdjMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl AdjMatrix {
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Identification of a vertex produced by the copy operation: clone number
/// `clone` (counted from 1) of vertex `origin`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexTag {
    pub origin: usize,
    pub clone: usize,
}

/// A graph with named unary relations.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct ColoredGraph {
    graph: Graph,
    colors: BTreeMap<String, BTreeSet<usize>>,
}

impl From<Graph> for ColoredGraph {
    fn from(graph: Graph) -> Self {
        ColoredGraph { graph, colors: BTreeMap::new() }
    }
}

impl ColoredGraph {
    pub fn new(graph: Graph, colors: BTreeMap<String, BTreeSet<usize>>) -> Result<Self> {
        for set in colors.values() {
            for &v in set {
                graph.check_vertex(v)?;
            }
        }
        Ok(ColoredGraph { graph, colors })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn colors(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.colors
    }

    pub fn color(&self, name: &str) -> Option<&BTreeSet<usize>> {
        self.colors.get(name)
    }

    pub fn has_color(&self, name: &str, v: usize) -> bool {
        self.colors.get(name).is_some_and(|s| s.contains(&v))
    }

    /// Adds a new color. Names must be fresh.
    pub fn add_color(&mut self, name: impl Into<String>, set: BTreeSet<usize>) -> Result<()> {
        let name = name.into();
        for &v in &set {
            self.graph.check_vertex(v)?;
        }
        if self.colors.contains_key(&name) {
            return Err(Error::DuplicateColor(name));
        }
        self.colors.insert(name, set);
        Ok(())
    }

    /// Sets a color, replacing any previous relation with that name.
    pub fn set_color(&mut self, name: impl Into<String>, set: BTreeSet<usize>) -> Result<()> {
        for &v in &set {
            self.graph.check_vertex(v)?;
        }
        self.colors.insert(name.into(), set);
        Ok(())
    }

    pub fn with_color(mut self, name: impl Into<String>, set: impl IntoIterator<Item = usize>) -> Result<Self> {
        self.add_color(name, set.into_iter().collect())?;
        Ok(self)
    }

    /// Names of the colors containing `v`.
    pub fn colors_of(&self, v: usize) -> BTreeSet<&str> {
        self.colors.iter().filter(|(_, s)| s.contains(&v)).map(|(k, _)| k.as_str()).collect()
    }

    /// Keeps only the colors whose names satisfy `keep`.
    pub fn retain_colors(&mut self, mut keep: impl FnMut(&str) -> bool) {
        self.colors.retain(|k, _| keep(k));
    }

    /// The same graph carrying the listed colors only. Missing names are
    /// added as empty relations.
    pub fn restrict_colors<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> ColoredGraph {
        let colors = names
            .into_iter()
            .map(|n| (n.to_string(), self.colors.get(n).cloned().unwrap_or_default()))
            .collect();
        ColoredGraph { graph: self.graph.clone(), colors }
    }

    /// Transfers colors along a new-to-old vertex map.
    pub fn pull_back(&self, graph: Graph, origin: &[usize]) -> ColoredGraph {
        let colors = self
            .colors
            .iter()
            .map(|(k, s)| {
                let set = origin.iter().enumerate().filter(|(_, o)| s.contains(o)).map(|(i, _)| i).collect();
                (k.clone(), set)
            })
            .collect();
        ColoredGraph { graph, colors }
    }

    pub fn pair_subgraph(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Result<(ColoredGraph, Vec<usize>)> {
        let (g, map) = self.graph.pair_subgraph(a, b)?;
        Ok((self.pull_back(g, &map), map))
    }

    pub fn induced_subgraph(&self, s: &BTreeSet<usize>) -> Result<(ColoredGraph, Vec<usize>)> {
        self.pair_subgraph(s, s)
    }

    /// The radius-`r` ball around `u` with colors carried over. An empty
    /// center set yields the empty graph.
    pub fn ball(&self, u: &BTreeSet<usize>, r: usize) -> Result<(ColoredGraph, Vec<usize>)> {
        let vs = self.graph.ball_vertices(u, r)?;
        self.induced_subgraph(&vs)
    }

    /// Replaces the underlying graph, keeping colors. Vertex counts must agree.
    pub fn with_graph(&self, graph: Graph) -> ColoredGraph {
        assert_eq!(graph.n, self.graph.n, "vertex count must be preserved");
        ColoredGraph { graph, colors: self.colors.clone() }
    }
}
