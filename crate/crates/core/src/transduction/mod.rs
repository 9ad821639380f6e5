//! Transductions as pipelines of copy, coloring, interpretation, perturbation
//! and gluing stages.
//!
//! A pipeline is applied to one colored graph. `ColorSearch` stages stand for
//! the nondeterministic coloring step: [`apply_pipeline`] takes one explicit
//! witness per such stage, while [`enumerate_images`] and [`member_check`]
//! range over all of them, subject to a budget on the search space.

mod gluing;
mod identities;
mod json;

pub use gluing::{check_star_coloring, glue, monotone_closure_witness, Gluing, MonotoneWitness};
pub use identities::{copy_commute_check, pendant_selfcopy};
pub use json::{witnesses_from_json, witnesses_to_json};

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph, IsoClasses, VertexTag};
use crate::logic::{parse_with_free, CompiledFormula, Evaluator, Formula, Model};
use crate::perturbation::{apply_sequence_colored, Perturbation};

/// Default bound on the number of colorings a search may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// One U-expansion: the vertex set of every color in U.
pub type ColoringWitness = BTreeMap<String, BTreeSet<usize>>;

/// A simple interpretation. `nu` may mention only `x`; `eta` only `x`, `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub nu: Formula,
    pub eta: Formula,
}

impl Interpretation {
    pub fn new(nu: Formula, eta: Formula) -> Result<Self> {
        check_free(&nu, &["x"])?;
        check_free(&eta, &["x", "y"])?;
        nu.check_no_shadowing(&["x"])?;
        eta.check_no_shadowing(&["x", "y"])?;
        Ok(Interpretation { nu, eta })
    }

    pub fn parse(nu: &str, eta: &str) -> Result<Self> {
        Interpretation::new(parse_with_free(nu, &["x"])?, parse_with_free(eta, &["x", "y"])?)
    }

    /// `(true, E(x,y))`.
    pub fn identity() -> Self {
        Interpretation { nu: Formula::True, eta: Formula::edge("x", "y") }
    }

    /// `(M(x), E(x,y))`: the subgraph induced by `M`.
    pub fn hereditary(mark: &str) -> Self {
        Interpretation { nu: Formula::pred(mark, "x"), eta: Formula::edge("x", "y") }
    }

    /// `(A(x) | B(x), E(x,y) & (A(x) | A(y)) & (B(x) | B(y)))`: the subgraph
    /// `G[A, B]`.
    pub fn pair_hereditary(a: &str, b: &str) -> Self {
        let either = |c: &str| Formula::pred(c, "x").or(Formula::pred(c, "y"));
        Interpretation {
            nu: Formula::pred(a, "x").or(Formula::pred(b, "x")),
            eta: Formula::edge("x", "y").and(either(a)).and(either(b)),
        }
    }
}

fn check_free(f: &Formula, allowed: &[&str]) -> Result<()> {
    match f.free_vars().into_iter().find(|v| !allowed.contains(&v.as_str())) {
        Some(v) => Err(Error::UnboundVariable(v)),
        None => Ok(()),
    }
}

/// A graph produced from a host, with the host vertex of each new vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub graph: ColoredGraph,
    pub origin: Vec<usize>,
}

/// `k` copies of `g` with the clones of each vertex made pairwise adjacent.
/// Clone `i` (from 1) of `v` gets id `v * k + (i - 1)`; colors are
/// replicated to every clone.
pub fn copy(g: &ColoredGraph, k: usize) -> Result<(ColoredGraph, Vec<VertexTag>)> {
    if k == 0 {
        return Err(Error::InvalidArgument("copy needs k >= 1".into()));
    }
    let n = g.n();
    let id = |v: usize, i: usize| v * k + i;
    let mut edges = Vec::new();
    for (u, v) in g.graph().edges() {
        edges.extend((0..k).map(|i| (id(u, i), id(v, i))));
    }
    for v in 0..n {
        for i in 0..k {
            edges.extend((i + 1..k).map(|j| (id(v, i), id(v, j))));
        }
    }
    let graph = Graph::new(n * k, edges)?;
    let tags: Vec<VertexTag> = (0..n * k).map(|c| VertexTag { origin: c / k, clone: c % k + 1 }).collect();
    let origin: Vec<usize> = tags.iter().map(|t| t.origin).collect();
    Ok((g.pull_back(graph, &origin), tags))
}

/// Evaluates `eta` on every ordered pair of `vertices` of `g` and returns the
/// realized edges, or an error if the relation is reflexive or asymmetric.
pub(crate) fn realize_edges(g: &ColoredGraph, eta: &Formula, vertices: &[usize]) -> Result<Vec<(usize, usize)>> {
    let compiled = CompiledFormula::compile(eta, &["x", "y"])?;
    let model = Model::new(g);
    let mut ev = Evaluator::new(&model, &compiled);
    let mut edges = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        if ev.eval(&[u, u])? {
            return Err(Error::ReflexiveEdge(u));
        }
        for &v in &vertices[i + 1..] {
            let forward = ev.eval(&[u, v])?;
            if forward != ev.eval(&[v, u])? {
                return Err(Error::AsymmetricEdge(u, v));
            }
            if forward {
                edges.push((u, v));
            }
        }
    }
    Ok(edges)
}

/// Applies a simple interpretation. Colors of kept vertices carry over.
pub fn interpret(g: &ColoredGraph, interp: &Interpretation) -> Result<Image> {
    let nu = CompiledFormula::compile(&interp.nu, &["x"])?;
    let model = Model::new(g);
    let mut ev = Evaluator::new(&model, &nu);
    let mut kept = Vec::new();
    for v in g.graph().vertices() {
        if ev.eval(&[v])? {
            kept.push(v);
        }
    }
    let edges = realize_edges(g, &interp.eta, &kept)?;
    Ok(image_on(g, &kept, &edges))
}

/// The graph on `kept` (sorted host ids) with the given host edges.
pub(crate) fn image_on(g: &ColoredGraph, kept: &[usize], edges: &[(usize, usize)]) -> Image {
    let index = |v: usize| kept.binary_search(&v).expect("edge endpoint is kept");
    let graph = Graph::new(kept.len(), edges.iter().map(|&(u, v)| (index(u), index(v)))).expect("valid image");
    Image { graph: g.pull_back(graph, kept), origin: kept.to_vec() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stage {
    Copy { k: usize },
    /// A fixed coloring of the current graph.
    ColorWitness(ColoringWitness),
    /// A coloring chosen by the caller or by search.
    ColorSearch { colors: Vec<String> },
    Interpret(Interpretation),
    Perturb(Perturbation),
    Glue(Gluing),
}

impl Stage {
    pub fn name(&self) -> &'static str {
        match self {
            Stage::Copy { .. } => "copy",
            Stage::ColorWitness(_) => "colorwitness",
            Stage::ColorSearch { .. } => "colorsearch",
            Stage::Interpret(_) => "interpret",
            Stage::Perturb(_) => "perturb",
            Stage::Glue(_) => "glue",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pipeline {
    pub stages: Vec<Stage>,
}

impl Pipeline {
    pub fn new(stages: Vec<Stage>) -> Self {
        Pipeline { stages }
    }

    /// The pipeline `[Interpret(interp)]`.
    pub fn interpretation(interp: Interpretation) -> Self {
        Pipeline { stages: vec![Stage::Interpret(interp)] }
    }

    /// `[ColorSearch([mark]), Interpret(hereditary(mark))]`.
    pub fn hereditary(mark: &str) -> Self {
        Pipeline {
            stages: vec![Stage::ColorSearch { colors: vec![mark.into()] }, Stage::Interpret(Interpretation::hereditary(mark))],
        }
    }

    pub fn then(mut self, other: Pipeline) -> Self {
        self.stages.extend(other.stages);
        self
    }

    pub fn search_stages(&self) -> usize {
        self.stages.iter().filter(|s| matches!(s, Stage::ColorSearch { .. })).count()
    }

    /// Base-2 logarithm of the number of colorings a search visits on a host
    /// with `n` vertices, using the largest possible size at each stage.
    pub fn search_space_log2(&self, n: usize) -> f64 {
        let mut size = n as f64;
        let mut log2 = 0.0;
        for s in &self.stages {
            match s {
                Stage::Copy { k } => size *= *k as f64,
                Stage::ColorSearch { colors } => log2 += colors.len() as f64 * size,
                _ => {}
            }
        }
        log2
    }

    pub fn check_budget(&self, n: usize, budget: u64) -> Result<()> {
        let log2_size = self.search_space_log2(n);
        let allowed = (budget.max(1) as f64).log2();
        if log2_size > allowed + 1e-9 || log2_size >= 64.0 {
            return Err(Error::BudgetExceeded { log2_size, budget });
        }
        Ok(())
    }
}

fn stage_error(stage: usize, msg: impl Into<String>) -> Error {
    Error::Stage { stage, msg: msg.into() }
}

fn apply_coloring(g: &mut ColoredGraph, stage: usize, w: &ColoringWitness) -> Result<()> {
    for (name, set) in w {
        if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
            return Err(stage_error(stage, format!("witness color `{name}` uses vertex {v}, host has {} vertices", g.n())));
        }
        g.set_color(name.clone(), set.clone())?;
    }
    Ok(())
}

/// Applies one non-search stage.
fn apply_stage(g: &ColoredGraph, index: usize, stage: &Stage) -> Result<ColoredGraph> {
    Ok(match stage {
        Stage::Copy { k } => copy(g, *k).map_err(|e| stage_error(index, e.to_string()))?.0,
        Stage::ColorWitness(w) => {
            let mut out = g.clone();
            apply_coloring(&mut out, index, w)?;
            out
        }
        Stage::Interpret(i) => interpret(g, i)?.graph,
        Stage::Perturb(p) => apply_sequence_colored(g, p).map_err(|e| stage_error(index, e.to_string()))?,
        Stage::Glue(gl) => glue(g, gl)?.graph,
        Stage::ColorSearch { .. } => unreachable!("search stages are handled by the caller"),
    })
}

fn check_witness(index: usize, colors: &[String], w: &ColoringWitness) -> Result<()> {
    let want: BTreeSet<&str> = colors.iter().map(String::as_str).collect();
    let got: BTreeSet<&str> = w.keys().map(String::as_str).collect();
    if want != got {
        return Err(stage_error(index, format!("witness colors {got:?} do not match the stage colors {want:?}")));
    }
    Ok(())
}

/// Applies the stages left to right, using `witnesses[i]` for the `i`-th
/// `ColorSearch` stage. Colors of the host and of earlier stages stay
/// visible; a coloring replaces an existing color of the same name.
pub fn apply_pipeline_colored(g: &ColoredGraph, p: &Pipeline, witnesses: &[ColoringWitness]) -> Result<ColoredGraph> {
    let needed = p.search_stages();
    if witnesses.len() != needed {
        return Err(Error::InvalidArgument(format!(
            "pipeline has {needed} color-search stage(s) but {} witness(es) were given",
            witnesses.len()
        )));
    }
    let mut current = g.clone();
    let mut next_witness = witnesses.iter();
    for (index, stage) in p.stages.iter().enumerate() {
        current = match stage {
            Stage::ColorSearch { colors } => {
                let w = next_witness.next().expect("counted above");
                check_witness(index, colors, w)?;
                let mut out = current;
                apply_coloring(&mut out, index, w)?;
                out
            }
            other => apply_stage(&current, index, other)?,
        };
    }
    Ok(current)
}

/// [`apply_pipeline_colored`] without the colors of the result.
pub fn apply_pipeline(g: &ColoredGraph, p: &Pipeline, witnesses: &[ColoringWitness]) -> Result<Graph> {
    Ok(apply_pipeline_colored(g, p, witnesses)?.into_graph())
}

/// Depth-first search over all witness choices. `visit` returns `true` to
/// stop the search.
fn search(
    g: &ColoredGraph,
    p: &Pipeline,
    from: usize,
    chosen: &mut Vec<ColoringWitness>,
    visit: &mut dyn FnMut(&ColoredGraph, &[ColoringWitness]) -> Result<bool>,
) -> Result<bool> {
    let mut current = g.clone();
    for index in from..p.stages.len() {
        match &p.stages[index] {
            Stage::ColorSearch { colors } => {
                let n = current.n();
                let total_bits = colors.len() * n;
                for mask in 0..(1u64 << total_bits) {
                    let w: ColoringWitness = colors
                        .iter()
                        .enumerate()
                        .map(|(c, name)| (name.clone(), (0..n).filter(|v| mask >> (c * n + v) & 1 == 1).collect()))
                        .collect();
                    let mut colored = current.clone();
                    apply_coloring(&mut colored, index, &w)?;
                    chosen.push(w);
                    let stop = search(&colored, p, index + 1, chosen, visit)?;
                    chosen.pop();
                    if stop {
                        return Ok(true);
                    }
                }
                return Ok(false);
            }
            other => current = apply_stage(&current, index, other)?,
        }
    }
    visit(&current, chosen)
}

/// All images of `g` under `p`, one per isomorphism class.
pub fn enumerate_images(g: &ColoredGraph, p: &Pipeline, budget: u64) -> Result<Vec<Graph>> {
    p.check_budget(g.n(), budget)?;
    let mut classes = IsoClasses::new();
    search(g, p, 0, &mut Vec::new(), &mut |img, _| {
        classes.insert(img.graph().clone());
        Ok(false)
    })?;
    Ok(classes.into_vec())
}

/// Witnesses under which `p` maps `g` to a graph isomorphic to `h`, or
/// `None` after an exhaustive search.
pub fn member_check(h: &Graph, p: &Pipeline, g: &ColoredGraph, budget: u64) -> Result<Option<Vec<ColoringWitness>>> {
    p.check_budget(g.n(), budget)?;
    let mut found = None;
    search(g, p, 0, &mut Vec::new(), &mut |img, chosen| {
        if crate::graph::is_isomorphic(img.graph(), h) {
            found = Some(chosen.to_vec());
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}
