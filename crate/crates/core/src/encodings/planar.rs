//! Graphs of bounded pathwidth are encoded in planar graphs.
//!
//! Take an interval supergraph `K` of `G` whose `2n` endpoints are distinct
//! integers. Interval `[a, b]` becomes a V-shape: two 45-degree arms going
//! down from `a` and `b` that meet at a bottom point. Bottoms are white
//! vertices, crossings of two V-shapes are black vertices, and consecutive
//! points along a V-shape are joined. Each white vertex whose interval lies
//! strictly inside others is also joined straight down to the lowest point
//! of the region just below it (the bottom of the tightest enclosing
//! V-shape, or the crossing where the two tightest ones meet).
//!
//! Every host edge goes downward, and the set of endpoints below a point
//! only grows along downward paths. Two intervals intersect exactly when
//! one white vertex reaches the other by a downward path, or some vertex
//! reaches both. Layer marks `M0..Ms` (longest downward path from the top)
//! make downward paths definable, which recovers `K`; a gluing over a star
//! coloring of `K` then cuts out `G`.
//!
//! Coordinates are doubled so every point is integral: a point is `(X, D)`
//! with `X` twice the abscissa and `D` twice the depth below the axis.

use std::collections::BTreeMap;

use super::{HostArtifact, IntervalFamily};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph};
use crate::logic::Formula;
use crate::params::{star_chromatic_number, vertex_separation};
use crate::transduction::{monotone_closure_witness, Interpretation, Pipeline, Stage};

/// Closed intervals `[lo, hi]`, one per vertex.
pub type IntervalModel = Vec<(usize, usize)>;

/// Result of [`encode_pathwidth_planar`].
#[derive(Debug, Clone)]
pub struct PlanarHost {
    pub artifact: HostArtifact,
    /// The interval model of `K`, with endpoints `1..=2n` all distinct.
    pub model: IntervalModel,
    /// The interval supergraph `K`.
    pub k: Graph,
    /// Straight-line drawing of the host in doubled coordinates `(X, D)`.
    pub coords: Vec<(i64, i64)>,
    /// Largest layer index `s`; marks are `M0..=Ms`.
    pub layers: usize,
}

/// Model of a supergraph of `g` from a vertex ordering: vertex `v` spans
/// from its own position to that of its last neighbor. Endpoints are then
/// renumbered to `1..=2n`, opening intervals before closing ones at equal
/// positions so that touching intervals still intersect.
pub fn interval_model_from_ordering(g: &Graph, order: &[usize]) -> Result<IntervalModel> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        g.check_vertex(v)?;
        pos[v] = i;
    }
    if order.len() != n || pos.contains(&usize::MAX) {
        return Err(Error::InvalidArgument("the ordering must list every vertex once".into()));
    }
    let end = |v: usize| g.neighbors(v).iter().map(|&u| pos[u]).fold(pos[v], usize::max);
    // Events sort by (position, closing?, vertex).
    let mut events: Vec<(usize, bool, usize)> = (0..n).flat_map(|v| [(pos[v], false, v), (end(v), true, v)]).collect();
    events.sort_unstable();
    let mut model = vec![(0, 0); n];
    for (i, &(_, closing, v)) in events.iter().enumerate() {
        if closing {
            model[v].1 = i + 1;
        } else {
            model[v].0 = i + 1;
        }
    }
    Ok(model)
}

fn check_model(model: &IntervalModel) -> Result<()> {
    let n = model.len();
    let mut seen = vec![false; 2 * n + 1];
    for &(lo, hi) in model {
        for e in [lo, hi] {
            if e == 0 || e > 2 * n || std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidArgument(format!("interval endpoints must be distinct and within 1..={}", 2 * n)));
            }
        }
        if lo > hi {
            return Err(Error::InvalidArgument(format!("interval [{lo}, {hi}] is reversed")));
        }
    }
    Ok(())
}

fn family(model: &IntervalModel) -> IntervalFamily {
    IntervalFamily { intervals: model.iter().enumerate().map(|(v, &(lo, hi))| (format!("v{v}"), lo as i64, hi as i64)).collect() }
}

struct Drawing {
    coords: Vec<(i64, i64)>,
    edges: Vec<(usize, usize)>,
}

/// Builds the host drawing. Whites are vertices `0..n`.
fn draw(model: &IntervalModel) -> Drawing {
    let n = model.len();
    let iv: Vec<(i64, i64)> = model.iter().map(|&(a, b)| (a as i64, b as i64)).collect();
    let mut coords: Vec<(i64, i64)> = iv.iter().map(|&(a, b)| (a + b, b - a)).collect();
    // crossing[(u, v)]: u's right arm meets v's left arm (a_u < a_v < b_u < b_v).
    let mut crossing = BTreeMap::new();
    // Points on each V-shape, keyed by X.
    let mut on: Vec<Vec<(i64, usize)>> = (0..n).map(|v| vec![(coords[v].0, v)]).collect();
    for u in 0..n {
        for v in 0..n {
            let ((au, bu), (av, bv)) = (iv[u], iv[v]);
            if au < av && av < bu && bu < bv {
                let id = coords.len();
                coords.push((bu + av, bu - av));
                crossing.insert((u, v), id);
                on[u].push((bu + av, id));
                on[v].push((bu + av, id));
            }
        }
    }
    let mut edges = Vec::new();
    for pts in &mut on {
        pts.sort_unstable();
        edges.extend(pts.windows(2).map(|w| (w[0].1, w[1].1)));
    }
    for v in 0..n {
        let (av, bv) = iv[v];
        let enclosing: Vec<usize> = (0..n).filter(|&t| iv[t].0 < av && iv[t].1 > bv).collect();
        let Some(&t1) = enclosing.iter().max_by_key(|&&t| iv[t].0) else { continue };
        let &t2 = enclosing.iter().min_by_key(|&&t| iv[t].1).unwrap();
        edges.push((v, if t1 == t2 { t1 } else { crossing[&(t2, t1)] }));
    }
    Drawing { coords, edges }
}

/// Whether two closed segments share a point.
fn segments_meet(p: (i64, i64), q: (i64, i64), r: (i64, i64), s: (i64, i64)) -> bool {
    let orient = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum();
    let within = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| {
        a.0.min(b.0) <= c.0 && c.0 <= a.0.max(b.0) && a.1.min(b.1) <= c.1 && c.1 <= a.1.max(b.1)
    };
    let (d1, d2, d3, d4) = (orient(r, s, p), orient(r, s, q), orient(p, q, r), orient(p, q, s));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && within(r, s, p)) || (d2 == 0 && within(r, s, q)) || (d3 == 0 && within(p, q, r)) || (d4 == 0 && within(p, q, s))
}

/// Whether the straight-line drawing of `g` at `coords` is plane: distinct
/// points, and edges meet only at shared endpoints.
pub fn is_plane_drawing(g: &Graph, coords: &[(i64, i64)]) -> bool {
    let mut points = coords.to_vec();
    points.sort_unstable();
    points.dedup();
    if points.len() != g.n() {
        return false;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for v in g.vertices().filter(|&v| v != a && v != b) {
            if segments_meet(coords[a], coords[b], coords[v], coords[v]) {
                return false;
            }
        }
        for &(c, d) in &edges[i + 1..] {
            let shared = [c, d].iter().filter(|x| **x == a || **x == b).count();
            if shared == 0 && segments_meet(coords[a], coords[b], coords[c], coords[d]) {
                return false;
            }
        }
    }
    true
}

/// Layer of each vertex: the length of the longest downward path ending there.
fn layers(g: &Graph, coords: &[(i64, i64)]) -> Vec<usize> {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| coords[v].1);
    let mut layer = vec![0; g.n()];
    for v in order {
        layer[v] = g.neighbors(v).iter().filter(|&&u| coords[u].1 < coords[v].1).map(|&u| layer[u] + 1).max().unwrap_or(0);
    }
    layer
}

fn layer_mark(i: usize) -> String {
    format!("M{i}")
}

/// An edge from a lower to a higher layer.
fn down_edge(x: &str, y: &str, s: usize) -> Formula {
    let lower = Formula::any((0..=s).flat_map(|i| (i + 1..=s).map(move |j| (i, j))).map(|(i, j)| {
        Formula::pred(&layer_mark(i), x).and(Formula::pred(&layer_mark(j), y))
    }));
    Formula::edge(x, y).and(lower)
}

/// A downward path from `x` to `y` with at most `len` edges (`len >= 1`).
fn downward(x: &str, y: &str, len: usize, s: usize) -> Formula {
    if len <= 1 {
        return down_edge(x, y, s);
    }
    let w = format!("w{len}");
    down_edge(x, y, s).or(Formula::exists(&w, down_edge(x, &w, s).and(downward(&w, y, len - 1, s))))
}

/// Adjacency of `K` on white vertices.
fn intersect_eta(s: usize) -> Formula {
    if s == 0 {
        return Formula::False;
    }
    let reach = |a: &str, b: &str| downward(a, b, s, s);
    Formula::all([Formula::pred("W", "x"), Formula::pred("W", "y"), Formula::neq("x", "y")])
        .and(reach("x", "y").or(reach("y", "x")).or(Formula::exists("z", reach("z", "x").and(reach("z", "y")))))
}

/// Encodes `g` in a planar host. Without a model, one is built from an
/// ordering of optimal vertex separation, so `K` has clique number
/// `pathwidth + 1`.
pub fn encode_pathwidth_planar(g: &Graph, model: Option<IntervalModel>) -> Result<PlanarHost> {
    let model = match model {
        Some(m) => m,
        None => interval_model_from_ordering(g, &vertex_separation(g).1)?,
    };
    if model.len() != g.n() {
        return Err(Error::InvalidArgument(format!("the model has {} intervals for {} vertices", model.len(), g.n())));
    }
    check_model(&model)?;
    let k = family(&model).intersection_graph();
    if !g.is_subgraph_of(&k) {
        return Err(Error::Precondition("G is not a subgraph of the interval graph of the model".into()));
    }
    let Drawing { coords, edges } = draw(&model);
    let host_graph = Graph::new(coords.len(), edges)?;
    if !is_plane_drawing(&host_graph, &coords) {
        return Err(Error::Verification("the V-shape drawing is not plane".into()));
    }
    let layer = layers(&host_graph, &coords);
    let s = layer.iter().copied().max().unwrap_or(0);
    let mut host = ColoredGraph::from(host_graph);
    for i in 0..=s {
        host.add_color(layer_mark(i), host.graph().vertices().filter(|&v| layer[v] == i).collect())?;
    }
    host.add_color("W", (0..g.n()).collect())?;
    let (_, coloring) = star_chromatic_number(&k)?;
    let extract = monotone_closure_witness(&k, &(0..g.n()).collect(), &g.edges().collect::<Vec<_>>(), &coloring)?;
    let pipeline = Pipeline::new(vec![Stage::Interpret(Interpretation::new(Formula::pred("W", "x"), intersect_eta(s))?)]).then(extract.pipeline);
    let artifact = HostArtifact::new(host, pipeline, vec![], g.clone().into(), format!("graph of pathwidth {}", clique_minus_one(&k)))?;
    Ok(PlanarHost { artifact, model, k, coords, layers: s })
}

fn clique_minus_one(k: &Graph) -> usize {
    crate::params::clique_number(k).saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::transduction::interpret;

    #[test]
    fn spec_examples() {
        // P3 with its own interval model.
        let p3 = encode_pathwidth_planar(&path(3), Some(vec![(1, 3), (2, 5), (4, 6)])).unwrap();
        assert_eq!(p3.k, path(3));
        encode_pathwidth_planar(&cycle(4), None).unwrap();
        let k1 = encode_pathwidth_planar(&path(1), None).unwrap();
        assert_eq!(k1.artifact.host.n(), 1);
    }

    #[test]
    fn bad_models_are_rejected() {
        assert!(matches!(encode_pathwidth_planar(&path(2), Some(vec![(1, 2), (2, 4)])), Err(Error::InvalidArgument(_))));
        assert!(matches!(encode_pathwidth_planar(&path(2), Some(vec![(1, 2), (3, 4)])), Err(Error::Precondition(_))));
    }

    #[test]
    fn ordering_model_covers_graph() {
        let g = cycle(5);
        let model = interval_model_from_ordering(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert!(g.is_subgraph_of(&family(&model).intersection_graph()));
    }

    #[test]
    fn nested_and_crossing_intervals_recover_k() {
        // Every interval model on up to four intervals: the first stage of
        // the pipeline must give back the intersection graph exactly.
        for perm in permutations(8) {
            let model: IntervalModel = (0..4).map(|v| (perm[2 * v].min(perm[2 * v + 1]) + 1, perm[2 * v].max(perm[2 * v + 1]) + 1)).collect();
            let k = family(&model).intersection_graph();
            let planar = encode_pathwidth_planar(&k, Some(model.clone())).unwrap();
            let Stage::Interpret(first) = &planar.artifact.pipeline.stages[0] else { panic!() };
            let img = interpret(&planar.artifact.host, first).unwrap();
            assert_eq!(img.graph.graph(), &k, "model {model:?}");
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        heap(n, &mut cur, &mut out);
        // Keep one representative per set of intervals: pairs sorted, intervals
        // listed by left endpoint.
        out.retain(|p| (0..n / 2).all(|v| p[2 * v] < p[2 * v + 1]) && (1..n / 2).all(|v| p[2 * v - 2] < p[2 * v]));
        out
    }

    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
}
