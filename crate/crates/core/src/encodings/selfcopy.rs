//! Paths are self-copying: a marked path on `nk` vertices interprets
//! `C_k(P_n)`.

use super::HostArtifact;
use crate::error::{Error, Result};
use crate::graph::generators::path;
use crate::graph::ColoredGraph;
use crate::logic::Formula;
use crate::transduction::{copy, Interpretation, Pipeline};

/// Host `P_{nk}` with `M(v_i)` iff `floor(i/k)` is odd, so the blocks of `k`
/// consecutive vertices alternate between marked and unmarked. Within a block
/// everything is joined; across blocks, vertices at distance exactly `k` are
/// joined, which pairs clone `i` of one block with clone `i` of the next.
pub fn path_selfcopy(n: usize, k: usize) -> Result<HostArtifact> {
    if k == 0 {
        return Err(Error::InvalidArgument("self-copy needs k >= 1".into()));
    }
    let host = ColoredGraph::from(path(n * k)).with_color("M", (0..n * k).filter(|i| (i / k) % 2 == 1))?;
    let near = Formula::neq("x", "y").and(Formula::dist_le("x", "y", k - 1)).and(Formula::pred("M", "x").iff(Formula::pred("M", "y")));
    let eta = Formula::dist_eq("x", "y", k).or(near);
    let pipeline = Pipeline::interpretation(Interpretation::new(Formula::True, eta)?);
    let target = copy(&path(n).into(), k)?.0;
    HostArtifact::new(host, pipeline, vec![], target, format!("C_{k}(P_{n})"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_example() {
        let a = path_selfcopy(2, 3).unwrap();
        assert_eq!(a.host.n(), 6);
        assert_eq!(a.host.color("M").unwrap().len(), 3);
    }

    #[test]
    fn small_cases() {
        for n in 0..=4 {
            for k in 1..=3 {
                path_selfcopy(n, k).unwrap();
            }
        }
    }
}
