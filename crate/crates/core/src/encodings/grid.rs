//! Grids are encoded in the class of unit interval graphs. The host
//! `H_{n,m}` has rows `V_1..V_n` that are cliques, and `v_{i,j}` is adjacent
//! to `v_{i+1,k}` for `k <= j`. Rows are marked cyclically by `M0, M1, M2`,
//! so the neighboring rows of a vertex carry the two other marks.

use super::{HostArtifact, IntervalFamily};
use crate::error::{Error, Result};
use crate::graph::generators::grid;
use crate::graph::{ColoredGraph, Graph};
use crate::logic::Formula;
use crate::transduction::{Interpretation, Pipeline};

fn id(m: usize, i: usize, j: usize) -> usize {
    i * m + j
}

fn check(n: usize, m: usize) -> Result<()> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidArgument(format!("grid encoding needs n, m >= 2, got {n}x{m}")));
    }
    Ok(())
}

/// `H_{n,m}` with row marks; `v_{i,j}` is vertex `i*m + j` (0-based).
pub fn grid_host(n: usize, m: usize) -> Result<ColoredGraph> {
    check(n, m)?;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..m {
            edges.extend((j + 1..m).map(|k| (id(m, i, j), id(m, i, k))));
            if i + 1 < n {
                edges.extend((0..=j).map(|k| (id(m, i, j), id(m, i + 1, k))));
            }
        }
    }
    let mut host = ColoredGraph::from(Graph::new(n * m, edges)?);
    for c in 0..3 {
        host.add_color(format!("M{c}"), (0..n).filter(|i| i % 3 == c).flat_map(|i| (0..m).map(move |j| id(m, i, j))).collect())?;
    }
    Ok(host)
}

/// Unit-length model of `H_{n,m}`: `v_{i,j}` is `[s, s + m + 1]` with
/// `s = i(m+1) + j`.
pub fn grid_unit_interval_model(n: usize, m: usize) -> Result<IntervalFamily> {
    check(n, m)?;
    let len = (m + 1) as i64;
    let intervals = (0..n)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| {
            let s = i as i64 * len + j as i64;
            (format!("v{i}_{j}"), s, s + len)
        })
        .collect();
    Ok(IntervalFamily { intervals })
}

fn mark(c: usize) -> String {
    format!("M{}", c % 3)
}

/// `w` is in row mark `d` and adjacent to exactly one of `a`, `b`.
fn differs(d: usize, a: &str, b: &str, w: &str) -> Formula {
    Formula::pred(&mark(d), w).and(Formula::edge(a, w).iff(Formula::edge(b, w)).not())
}

/// The `M_d`-neighborhoods of `a` and `b` differ in exactly the vertex `w`.
fn differs_only(d: usize, a: &str, b: &str, w: &str, other: &str) -> Formula {
    differs(d, a, b, w).and(Formula::forall(other, differs(d, a, b, other).implies(Formula::eq(other, w))))
}

/// Horizontal edge: same row, and the neighborhoods in some neighboring row
/// differ in exactly one vertex.
fn same_row() -> Formula {
    Formula::any((0..3).map(|c| {
        let one = |d: usize| Formula::exists("w", differs_only(d, "x", "y", "w", "v"));
        Formula::pred(&mark(c), "x").and(Formula::pred(&mark(c), "y")).and(one(c + 1).or(one(c + 2)))
    }))
    .and(Formula::edge("x", "y"))
}

/// Vertical edge: `b` is in another row and some row neighbor `a'` of `a`
/// has an `M_d`-neighborhood differing from that of `a` exactly in `b`.
fn cross_row(a: &str, b: &str) -> Formula {
    Formula::any((0..3).flat_map(|c| {
        [c + 1, c + 2].map(|d| {
            let witness = Formula::pred(&mark(c), "z").and(Formula::edge(a, "z")).and(differs_only(d, a, "z", b, "v"));
            Formula::pred(&mark(c), a).and(Formula::pred(&mark(d), b)).and(Formula::exists("z", witness))
        })
    }))
    .and(Formula::edge(a, b))
}

pub fn grid_eta() -> Formula {
    same_row().or(cross_row("x", "y")).or(cross_row("y", "x"))
}

pub fn encode_grid(n: usize, m: usize) -> Result<HostArtifact> {
    let host = grid_host(n, m)?;
    let pipeline = Pipeline::interpretation(Interpretation::new(Formula::True, grid_eta())?);
    HostArtifact::new(host, pipeline, vec![], grid(n, m).into(), format!("{n}x{m} grid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(grid_host(2, 2).unwrap().n(), 4);
        encode_grid(2, 2).unwrap();
        encode_grid(2, 3).unwrap();
        encode_grid(3, 3).unwrap();
        assert!(matches!(encode_grid(1, 3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn unit_interval_model_realizes_host() {
        for n in 2..=5 {
            for m in 2..=5 {
                let model = grid_unit_interval_model(n, m).unwrap();
                assert!(model.intervals.iter().all(|(_, lo, hi)| hi - lo == (m + 1) as i64));
                assert_eq!(&model.intersection_graph(), grid_host(n, m).unwrap().graph());
            }
        }
    }

    #[test]
    fn images_use_host_vertex_order() {
        // The image is the grid itself, not just an isomorphic copy.
        let a = encode_grid(3, 4).unwrap();
        assert_eq!(a.image().unwrap().graph(), &grid(3, 4));
    }
}
