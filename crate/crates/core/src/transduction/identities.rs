//! Copy identities: commuting copies, and copying by pendant vertices.

use super::{copy, Interpretation, Pipeline};
use crate::error::{Error, Result};
use crate::graph::{is_isomorphic, ColoredGraph, Graph};
use crate::logic::Formula;

/// Whether `C_k(C_l(G))` and `C_l(C_k(G))` are isomorphic.
pub fn copy_commute_check(g: &Graph, k: usize, l: usize, budget: u64) -> Result<bool> {
    let size = (k as u128) * (l as u128) * (g.n() as u128);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { log2_size: (size as f64).log2(), budget });
    }
    let g = ColoredGraph::from(g.clone());
    let kl = copy(&copy(&g, l)?.0, k)?.0;
    let lk = copy(&copy(&g, k)?.0, l)?.0;
    Ok(is_isomorphic(kl.graph(), lk.graph()))
}

/// Host `G` with `k` pendant leaves on every vertex, leaf `i` marked `M{i}`,
/// and a pipeline whose image is isomorphic to `C_k(G)`.
///
/// Leaves of one vertex are at distance 2; leaves of adjacent vertices are at
/// distance 3 and are joined when they carry the same mark.
pub fn pendant_selfcopy(g: &Graph, k: usize) -> Result<(ColoredGraph, Pipeline)> {
    if k == 0 {
        return Err(Error::InvalidArgument("pendant self-copy needs k >= 1".into()));
    }
    let n = g.n();
    let leaf = |v: usize, i: usize| n + v * k + i;
    let edges = g.edges().chain((0..n).flat_map(|v| (0..k).map(move |i| (v, leaf(v, i)))));
    let mut host = ColoredGraph::from(Graph::new(n + n * k, edges)?);
    let mark = |i: usize| format!("M{}", i + 1);
    for i in 0..k {
        host.add_color(mark(i), (0..n).map(|v| leaf(v, i)).collect())?;
    }
    let nu = Formula::any((0..k).map(|i| Formula::pred(&mark(i), "x")));
    let same_mark = (0..k).map(|i| Formula::pred(&mark(i), "x").and(Formula::pred(&mark(i), "y")).and(Formula::dist_eq("x", "y", 3)));
    let eta = Formula::dist_eq("x", "y", 2).or(Formula::any(same_mark));
    Ok((host, Pipeline::interpretation(Interpretation::new(nu, eta)?)))
}
