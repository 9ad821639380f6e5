//! Compressed caterpillars and their encoding in colored paths.
//!
//! A compressed caterpillar is a colored spine path together with
//! multiplicities: `f[(v, I)]` is the number of leaves hanging from spine
//! vertex `v` whose set of palette colors is exactly `I` (a bitmask over the
//! palette).

use std::collections::{BTreeMap, BTreeSet};

use super::{fresh_name, HostArtifact};
use crate::error::{Error, Result};
use crate::graph::generators::path;
use crate::graph::{ColoredGraph, Graph};
use crate::logic::Formula;
use crate::transduction::{Interpretation, Pipeline};

/// Leaf multiplicities keyed by spine vertex and palette bitmask.
pub type Multiplicities = BTreeMap<(usize, u32), usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedCaterpillar {
    /// A colored path whose edges are `(i, i + 1)`.
    pub spine: ColoredGraph,
    pub palette: Vec<String>,
    pub f: Multiplicities,
}

impl CompressedCaterpillar {
    pub fn new(spine: ColoredGraph, palette: Vec<String>, f: Multiplicities) -> Result<Self> {
        if spine.graph() != &path(spine.n()) {
            return Err(Error::NotCaterpillar("the spine must be the path 0-1-...".into()));
        }
        if palette.len() > 16 || palette.iter().collect::<BTreeSet<_>>().len() != palette.len() {
            return Err(Error::InvalidArgument("the palette must have at most 16 distinct colors".into()));
        }
        if let Some(c) = spine.colors().keys().find(|c| !palette.contains(c)) {
            return Err(Error::InvalidArgument(format!("spine color {c} is not in the palette")));
        }
        if let Some(&(v, mask)) = f.keys().find(|&&(v, mask)| v >= spine.n() || mask >> palette.len() != 0) {
            return Err(Error::InvalidArgument(format!("multiplicity key ({v}, {mask}) is out of range")));
        }
        Ok(CompressedCaterpillar { spine, palette, f })
    }

    /// Number of leaves on spine vertex `v`.
    pub fn leaves_of(&self, v: usize) -> usize {
        self.f.range((v, 0)..=(v, u32::MAX)).map(|(_, &c)| c).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.spine.n()).map(|v| self.leaves_of(v) + self.spine.graph().degree(v)).max().unwrap_or(0)
    }

    /// Leaves `(spine vertex, mask)` in expansion order.
    fn leaf_list(&self) -> Vec<(usize, u32)> {
        self.f.iter().flat_map(|(&key, &c)| std::iter::repeat_n(key, c)).collect()
    }

    /// The caterpillar: spine vertices first, then the leaves in key order.
    pub fn expand(&self) -> Result<ColoredGraph> {
        let s = self.spine.n();
        let leaves = self.leaf_list();
        let edges = self.spine.graph().edges().chain(leaves.iter().enumerate().map(|(i, &(v, _))| (v, s + i)));
        let mut g = ColoredGraph::from(Graph::new(s + leaves.len(), edges)?);
        for (b, name) in self.palette.iter().enumerate() {
            let mut set = self.spine.color(name).cloned().unwrap_or_default();
            set.extend(leaves.iter().enumerate().filter(|(_, &(_, m))| m >> b & 1 == 1).map(|(i, _)| s + i));
            g.add_color(name.clone(), set)?;
        }
        Ok(g)
    }
}

/// Compresses a colored caterpillar over the palette of its color names.
/// The spine is the set of non-leaves, or the vertex `0` when every vertex
/// is a leaf.
pub fn compress_caterpillar(c: &ColoredGraph) -> Result<CompressedCaterpillar> {
    let g = c.graph();
    let palette: Vec<String> = c.colors().keys().cloned().collect();
    if g.n() == 0 {
        return CompressedCaterpillar::new(ColoredGraph::from(Graph::edgeless(0)), palette, Multiplicities::new());
    }
    if !g.is_connected() || g.edge_count() != g.n() - 1 {
        return Err(Error::NotCaterpillar("a caterpillar is a tree".into()));
    }
    let mut spine: BTreeSet<usize> = g.vertices().filter(|&v| g.degree(v) >= 2).collect();
    if spine.is_empty() {
        spine.insert(0);
    }
    let (sub, map) = g.induced_subgraph(&spine)?;
    if sub.max_degree() > 2 || !sub.is_connected() {
        return Err(Error::NotCaterpillar("the non-leaf vertices do not form a path".into()));
    }
    // Walk the spine from its smallest end.
    let start = sub.vertices().find(|&v| sub.degree(v) <= 1).expect("a path has an end");
    let mut order = vec![start];
    while order.len() < sub.n() {
        let last = *order.last().unwrap();
        let next = sub.neighbors(last).iter().copied().find(|u| order.len() < 2 || *u != order[order.len() - 2]).unwrap();
        order.push(next);
    }
    let order: Vec<usize> = order.into_iter().map(|i| map[i]).collect();
    let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mask = |v: usize| palette.iter().enumerate().fold(0u32, |m, (b, name)| if c.has_color(name, v) { m | 1 << b } else { m });
    let mut f = Multiplicities::new();
    for v in g.vertices().filter(|v| !spine.contains(v)) {
        let anchor = g.neighbors(v)[0];
        *f.entry((pos[&anchor], mask(v))).or_default() += 1;
    }
    let spine_graph = c.pull_back(path(order.len()), &order);
    CompressedCaterpillar::new(spine_graph, palette, f)
}

/// Host: the colored path `Q_0 Q_1 ...` where block `Q_i` is a vertex marked
/// `S`, spine vertex `i`, its leaves, and a vertex marked `T`. Requires the
/// expanded caterpillar to have maximum degree at most `delta`.
pub fn encode_caterpillar_in_path(cc: &CompressedCaterpillar, delta: usize) -> Result<HostArtifact> {
    let target = cc.expand()?;
    if target.graph().max_degree() > delta {
        return Err(Error::Precondition(format!("maximum degree {} exceeds the bound {delta}", target.graph().max_degree())));
    }
    let s_name = fresh_name("S", &cc.palette);
    let t_name = fresh_name("T", cc.palette.iter().chain([&s_name]));
    let leaves = cc.leaf_list();
    let mut order: Vec<Option<usize>> = Vec::new(); // target vertex, or None for S/T
    let (mut s_marks, mut t_marks) = (BTreeSet::new(), BTreeSet::new());
    for v in 0..cc.spine.n() {
        s_marks.insert(order.len());
        order.push(None);
        order.push(Some(v));
        order.extend(leaves.iter().enumerate().filter(|(_, &(a, _))| a == v).map(|(i, _)| Some(cc.spine.n() + i)));
        t_marks.insert(order.len());
        order.push(None);
    }
    let mut host = ColoredGraph::from(path(order.len()));
    for name in &cc.palette {
        let set = order.iter().enumerate().filter(|(_, t)| t.is_some_and(|t| target.has_color(name, t))).map(|(i, _)| i);
        host.add_color(name.clone(), set.collect())?;
    }
    host.add_color(s_name.clone(), s_marks)?;
    host.add_color(t_name.clone(), t_marks)?;
    let eta = caterpillar_eta(&s_name, delta);
    let nu = Formula::pred(&s_name, "x").not().and(Formula::pred(&t_name, "x").not());
    let pipeline = Pipeline::interpretation(Interpretation::new(nu, eta)?);
    HostArtifact::new(host, pipeline, vec![], target, "caterpillar")
}

/// Joins `x` and `y` at distance `d <= delta + 2` when exactly one of them
/// follows an `S` and no `S` lies between them (spine vertex and leaf), or
/// both follow an `S` and exactly one `S` lies between them (consecutive
/// spine vertices).
fn caterpillar_eta(s: &str, delta: usize) -> Formula {
    let after_s = |v: &str, w: &str| Formula::exists(w, Formula::edge(v, w).and(Formula::pred(s, w)));
    let (ax, ay) = (after_s("x", "w"), after_s("y", "w"));
    Formula::any((1..=delta + 2).map(|d| {
        let between_s = |z: &str| {
            Formula::pred(s, z).and(Formula::dist_le("x", z, d - 1)).and(Formula::dist_le(z, "y", d - 1))
        };
        let none = Formula::exists("z", between_s("z")).not();
        let one = Formula::exists("z", between_s("z").and(Formula::forall("u", between_s("u").implies(Formula::eq("u", "z")))));
        let rule1 = ax.clone().iff(ay.clone()).not().and(none);
        let rule2 = ax.clone().and(ay.clone()).and(one);
        Formula::dist_eq("x", "y", d).and(rule1.or(rule2))
    }))
}
