//! Subset complementations and their partition-flip form.
//!
//! A sequence `Z_1, ..., Z_k` of vertex sets flips the adjacency of a pair
//! `uv` once for every `Z_i` containing both ends. Writing `x(v)` for the
//! membership vector of `v` in `F_2^k`, the pair is flipped in total exactly
//! when the inner product `<x(u), x(v)>` is odd, so the whole sequence is
//! determined by the partition of the vertices by membership vector.
//!
//! Membership vectors are `u32` masks with bit `i` standing for `Z_{i+1}`. In
//! JSON they are bitstrings written `x_1` first: `"10"` means "in `Z_1`, not in
//! `Z_2`".

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph};

/// Longest supported sequence; masks are `u32`.
pub const MAX_SETS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Perturbation {
    pub sets: Vec<BTreeSet<usize>>,
}

impl Perturbation {
    pub fn new(sets: impl IntoIterator<Item = impl IntoIterator<Item = usize>>) -> Self {
        Perturbation { sets: sets.into_iter().map(|s| s.into_iter().collect()).collect() }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.sets.len() > MAX_SETS {
            return Err(Error::InvalidArgument(format!("at most {MAX_SETS} sets are supported")));
        }
        match self.sets.iter().flatten().find(|&&v| v >= n) {
            Some(&vertex) => Err(Error::VertexOutOfRange { vertex, n }),
            None => Ok(()),
        }
    }
}

/// A partition of the vertices indexed by membership vectors. Only nonempty
/// parts are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipPartition {
    pub k: usize,
    pub parts: BTreeMap<u32, BTreeSet<usize>>,
}

fn inner_product(x: u32, y: u32) -> bool {
    (x & y).count_ones() % 2 == 1
}

pub fn bitstring(mask: u32, k: usize) -> String {
    (0..k).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn parse_bitstring(s: &str) -> Result<u32> {
    if s.len() > MAX_SETS {
        return Err(Error::Format(format!("bitstring `{s}` is longer than {MAX_SETS}")));
    }
    s.chars().enumerate().try_fold(0u32, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << i),
        _ => Err(Error::Format(format!("bitstring `{s}` may only contain 0 and 1"))),
    })
}

impl FlipPartition {
    /// Checks that the parts partition `0..n` and that every index fits in
    /// `k` bits.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.k > MAX_SETS {
            return Err(Error::NotAPartition(format!("k = {} exceeds {MAX_SETS}", self.k)));
        }
        let mut seen = vec![false; n];
        for (&x, part) in &self.parts {
            if self.k < MAX_SETS && x >> self.k != 0 {
                return Err(Error::NotAPartition(format!("index {x:#b} does not fit in {} bits", self.k)));
            }
            for &v in part {
                if v >= n {
                    return Err(Error::NotAPartition(format!("vertex {v} is outside 0..{n}")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotAPartition(format!("vertex {v} lies in two parts")));
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(v) => Err(Error::NotAPartition(format!("vertex {v} lies in no part"))),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let parts: serde_json::Map<String, serde_json::Value> =
            self.parts.iter().map(|(&x, p)| (bitstring(x, self.k), serde_json::json!(p))).collect();
        serde_json::json!({ "parts": parts })
    }

    /// Reads `{"parts": {"bitstring": [ids]}}`; all bitstrings must have the
    /// same length, which becomes `k`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            parts: BTreeMap<String, BTreeSet<usize>>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        let k = raw.parts.keys().next().map_or(0, String::len);
        let mut parts = BTreeMap::new();
        for (key, set) in raw.parts {
            if key.len() != k {
                return Err(Error::Format("bitstrings must all have the same length".into()));
            }
            if !set.is_empty() {
                parts.insert(parse_bitstring(&key)?, set);
            }
        }
        Ok(FlipPartition { k, parts })
    }
}

/// Complements the adjacency inside `z`.
pub fn subset_complement(g: &Graph, z: &BTreeSet<usize>) -> Result<Graph> {
    apply_sequence(g, &Perturbation { sets: vec![z.clone()] })
}

/// Applies `Z_1, ..., Z_k` left to right.
pub fn apply_sequence(g: &Graph, p: &Perturbation) -> Result<Graph> {
    p.validate(g.n())?;
    let n = g.n();
    let mut adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    for z in &p.sets {
        let z: Vec<usize> = z.iter().copied().collect();
        for (i, &u) in z.iter().enumerate() {
            for &v in &z[i + 1..] {
                adj[u][v] = !adj[u][v];
                adj[v][u] = !adj[v][u];
            }
        }
    }
    Ok(from_matrix(&adj))
}

fn from_matrix(adj: &[Vec<bool>]) -> Graph {
    let n = adj.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u][v]).map(move |v| (u, v)));
    Graph::new(n, edges).expect("matrix is symmetric and loop-free")
}

/// Groups the vertices by membership vector.
pub fn sets_to_partition(p: &Perturbation, n: usize) -> Result<FlipPartition> {
    p.validate(n)?;
    let mut parts: BTreeMap<u32, BTreeSet<usize>> = BTreeMap::new();
    for v in 0..n {
        let x = p.sets.iter().enumerate().fold(0u32, |acc, (i, z)| if z.contains(&v) { acc | 1 << i } else { acc });
        parts.entry(x).or_default().insert(v);
    }
    Ok(FlipPartition { k: p.len(), parts })
}

/// Flips every pair `uv` (`u != v`) whose parts have odd inner product. Each
/// unordered pair of part indices `x <= y` is visited once.
pub fn apply_partition_flip(g: &Graph, q: &FlipPartition) -> Result<Graph> {
    q.validate(g.n())?;
    let n = g.n();
    let mut adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    let parts: Vec<(u32, Vec<usize>)> = q.parts.iter().map(|(&x, s)| (x, s.iter().copied().collect())).collect();
    for (i, (x, px)) in parts.iter().enumerate() {
        for (y, py) in &parts[i..] {
            if !inner_product(*x, *y) {
                continue;
            }
            for (a, &u) in px.iter().enumerate() {
                // Inside one part, take each unordered pair once.
                let others = if x == y { &px[a + 1..] } else { &py[..] };
                for &v in others {
                    adj[u][v] = !adj[u][v];
                    adj[v][u] = !adj[v][u];
                }
            }
        }
    }
    Ok(from_matrix(&adj))
}

/// [`apply_sequence`] on a colored graph; colors are untouched.
pub fn apply_sequence_colored(g: &ColoredGraph, p: &Perturbation) -> Result<ColoredGraph> {
    Ok(g.with_graph(apply_sequence(g.graph(), p)?))
}
