//! Semantic locality tests over a finite family of graphs.
//!
//! These are checks, not proofs: a formula passes when no graph in the family
//! separates it from its evaluation on radius-`r` balls.

use std::collections::BTreeSet;

use super::eval::{CompiledFormula, Evaluator, Model};
use super::Formula;
use crate::error::Result;
use crate::graph::ColoredGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityReport {
    pub holds: bool,
    /// Index into the family and the offending tuple, listed in the sorted
    /// order of the free variables.
    pub counterexample: Option<(usize, Vec<usize>)>,
}

impl LocalityReport {
    fn pass() -> Self {
        LocalityReport { holds: true, counterexample: None }
    }

    fn fail(graph: usize, tuple: Vec<usize>) -> Self {
        LocalityReport { holds: false, counterexample: Some((graph, tuple)) }
    }
}

/// Calls `f` on every tuple in `0..n` of length `k`, stopping when it returns
/// `Some`.
fn find_tuple<T>(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Result<Option<T>>) -> Result<Option<T>> {
    if k > 0 && n == 0 {
        return Ok(None);
    }
    let mut t = vec![0; k];
    loop {
        if let Some(x) = f(&t)? {
            return Ok(Some(x));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

fn scan(
    phi: &Formula,
    family: &[ColoredGraph],
    r: usize,
    also: impl Fn(&ColoredGraph, &[usize]) -> bool,
) -> Result<LocalityReport> {
    let free: Vec<String> = phi.free_vars().into_iter().collect();
    let names: Vec<&str> = free.iter().map(String::as_str).collect();
    let compiled = CompiledFormula::compile(phi, &names)?;
    for (gi, g) in family.iter().enumerate() {
        let model = Model::new(g);
        let mut ev = Evaluator::new(&model, &compiled);
        let bad = find_tuple(g.n(), names.len(), |t| {
            let whole = ev.eval(t)?;
            let centers: BTreeSet<usize> = t.iter().copied().collect();
            let (ball, map) = g.ball(&centers, r)?;
            let local: Vec<usize> = t.iter().map(|v| map.binary_search(v).expect("center lies in its ball")).collect();
            let ball_model = Model::new(&ball);
            let in_ball = Evaluator::new(&ball_model, &compiled).eval(&local)?;
            let ok = whole == in_ball && (!whole || also(g, t));
            Ok((!ok).then(|| t.to_vec()))
        })?;
        if let Some(t) = bad {
            return Ok(LocalityReport::fail(gi, t));
        }
    }
    Ok(LocalityReport::pass())
}

/// Checks `G |= phi(v) <=> B_r(v) |= phi(v)` for every tuple of every graph.
pub fn check_r_local(phi: &Formula, family: &[ColoredGraph], r: usize) -> Result<LocalityReport> {
    scan(phi, family, r, |_, _| true)
}

/// As [`check_r_local`], and additionally every satisfying tuple must be
/// pairwise within distance `r`.
pub fn check_strongly_local(phi: &Formula, family: &[ColoredGraph], r: usize) -> Result<LocalityReport> {
    scan(phi, family, r, |g, t| {
        t.iter().all(|&a| {
            let d = g.graph().bfs(&[a], Some(r));
            t.iter().all(|&b| d[b].is_at_most(r))
        })
    })
}
