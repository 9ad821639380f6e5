//! Exact graph parameters for small graphs.
//!
//! Every algorithm is exponential and exact; each refuses graphs above a
//! fixed size with [`Error::BudgetExceeded`]. Vertex sets are `u32` masks.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Distance, Graph};
use crate::transduction::check_star_coloring;

pub const PATHWIDTH_LIMIT: usize = 20;
pub const TREEWIDTH_LIMIT: usize = 18;
pub const TREEDEPTH_LIMIT: usize = 18;
pub const BANDWIDTH_LIMIT: usize = 12;
pub const STAR_COLORING_LIMIT: usize = 14;

fn size_check(g: &Graph, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::BudgetExceeded { log2_size: g.n() as f64, budget: 1 << limit });
    }
    Ok(())
}

fn neighbor_masks(g: &Graph) -> Vec<u32> {
    g.vertices().map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect()
}

fn full(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// Pathwidth, computed as the vertex separation number: the least, over
/// vertex orderings, of the largest number of placed vertices with an
/// unplaced neighbor.
pub fn pathwidth(g: &Graph) -> Result<usize> {
    size_check(g, PATHWIDTH_LIMIT)?;
    Ok(vertex_separation(g).0)
}

/// The vertex separation number and an ordering attaining it.
pub fn vertex_separation(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let nb = neighbor_masks(g);
    let size = 1usize << n;
    let mut best = vec![u8::MAX; size];
    let mut last = vec![0u8; size];
    best[0] = 0;
    for s in 1..size as u32 {
        let boundary = bits(s).filter(|&v| nb[v] & !s != 0).count() as u8;
        for v in bits(s) {
            let cand = best[(s & !(1 << v)) as usize].max(boundary);
            if cand < best[s as usize] {
                best[s as usize] = cand;
                last[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full(n);
    while s != 0 {
        let v = last[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    (best[full(n) as usize] as usize, order)
}

/// Treewidth by dynamic programming over elimination prefixes: the cost of
/// eliminating `v` after the set `S` is the number of vertices outside
/// `S + v` reachable from `v` through `S`.
pub fn treewidth(g: &Graph) -> Result<usize> {
    size_check(g, TREEWIDTH_LIMIT)?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let nb = neighbor_masks(g);
    let size = 1usize << n;
    let mut tw = vec![u8::MAX; size];
    tw[0] = 0;
    for s in 1..size as u32 {
        let mut best = u8::MAX;
        for v in bits(s) {
            let rest = s & !(1 << v);
            let prev = tw[rest as usize];
            if prev >= best {
                continue;
            }
            // Vertices reachable from v through `rest`.
            let mut reach = 1u32 << v;
            let mut frontier = reach;
            while frontier != 0 {
                let mut next = 0;
                for u in bits(frontier) {
                    next |= nb[u];
                }
                next &= !reach;
                reach |= next;
                frontier = next & rest;
            }
            let q = (reach & !rest & !(1 << v)).count_ones() as u8;
            best = best.min(prev.max(q));
        }
        tw[s as usize] = best;
    }
    Ok(tw[size - 1] as usize)
}

fn components_of(nb: &[u32], s: u32) -> Vec<u32> {
    let mut left = s;
    let mut out = Vec::new();
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= nb[u];
            }
            next &= s & !comp;
            comp |= next;
            frontier = next;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

/// Treedepth: `td` of a connected graph is `1 + min_v td(G - v)`; of a
/// disconnected graph, the maximum over components.
pub fn treedepth(g: &Graph) -> Result<usize> {
    size_check(g, TREEDEPTH_LIMIT)?;
    let nb = neighbor_masks(g);
    let mut memo = HashMap::new();
    Ok(td_rec(&nb, full(g.n()), &mut memo))
}

fn td_rec(nb: &[u32], s: u32, memo: &mut HashMap<u32, usize>) -> usize {
    if s == 0 {
        return 0;
    }
    if s.count_ones() == 1 {
        return 1;
    }
    if let Some(&d) = memo.get(&s) {
        return d;
    }
    let comps = components_of(nb, s);
    let d = if comps.len() > 1 {
        comps.into_iter().map(|c| td_rec(nb, c, memo)).max().unwrap_or(0)
    } else {
        1 + bits(s).map(|v| td_rec(nb, s & !(1 << v), memo)).min().unwrap_or(0)
    };
    memo.insert(s, d);
    d
}

/// Bandwidth: the least `b` such that some ordering puts every edge within
/// distance `b`. Decided for increasing `b` by backtracking placement.
pub fn bandwidth(g: &Graph) -> Result<usize> {
    size_check(g, BANDWIDTH_LIMIT)?;
    Ok(bandwidth_layout(g).0)
}

/// The bandwidth and a layout (`layout[v]` = position of `v`) attaining it.
pub fn bandwidth_layout(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    if g.edge_count() == 0 {
        return (0, (0..n).collect());
    }
    // Lower bound: a vertex of degree d needs b >= ceil(d / 2).
    let lower = g.max_degree().div_ceil(2).max(1);
    for b in lower..n {
        let mut pos = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        if place(g, b, &mut pos, &mut order) {
            return (b, pos);
        }
    }
    unreachable!("b = n - 1 always admits a layout")
}

fn place(g: &Graph, b: usize, pos: &mut [usize], order: &mut Vec<usize>) -> bool {
    let p = order.len();
    if p == g.n() {
        return true;
    }
    // A placed vertex whose unplaced neighbors can no longer fit kills the branch.
    for &u in order.iter() {
        let pending = g.neighbors(u).iter().filter(|&&w| pos[w] == usize::MAX).count();
        if pending > 0 && pos[u] + b < p + pending - 1 {
            return false;
        }
    }
    for v in g.vertices() {
        if pos[v] != usize::MAX {
            continue;
        }
        if g.neighbors(v).iter().any(|&u| pos[u] != usize::MAX && p - pos[u] > b) {
            continue;
        }
        pos[v] = p;
        order.push(v);
        if place(g, b, pos, order) {
            return true;
        }
        order.pop();
        pos[v] = usize::MAX;
    }
    false
}

/// All paths on four vertices, each listed once, as `[a, b, c, d]`.
pub fn four_vertex_paths(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for (b, c) in g.edges() {
        for &a in g.neighbors(b) {
            if a == c {
                continue;
            }
            for &d in g.neighbors(c) {
                if d != b && d != a {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// The star chromatic number and an optimal star coloring.
pub fn star_chromatic_number(g: &Graph) -> Result<(usize, Vec<usize>)> {
    size_check(g, STAR_COLORING_LIMIT)?;
    let n = g.n();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    // Group the 4-paths by their largest vertex, which is colored last.
    let mut by_last: Vec<Vec<[usize; 4]>> = vec![Vec::new(); n];
    for p in four_vertex_paths(g) {
        by_last[*p.iter().max().expect("four entries")].push(p);
    }
    for k in 1..=n {
        let mut col = vec![usize::MAX; n];
        if star_color(g, k, 0, 0, &by_last, &mut col) {
            check_star_coloring(g, &col)?;
            return Ok((k, col));
        }
    }
    unreachable!("n colors always suffice")
}

fn star_color(g: &Graph, k: usize, v: usize, used: usize, by_last: &[Vec<[usize; 4]>], col: &mut [usize]) -> bool {
    if v == g.n() {
        return true;
    }
    // Colors are interchangeable, so a fresh color is only tried once.
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().any(|&u| u < v && col[u] == c) {
            continue;
        }
        col[v] = c;
        let bicolored = by_last[v].iter().any(|&[a, b, cc, d]| col[a] == col[cc] && col[b] == col[d]);
        if !bicolored && star_color(g, k, v + 1, used.max(c + 1), by_last, col) {
            return true;
        }
    }
    col[v] = usize::MAX;
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicParams {
    pub omega: usize,
    pub max_degree: usize,
    /// Length of a shortest cycle; infinite for forests.
    pub girth: Distance,
    pub degeneracy: usize,
    /// Component sizes, largest first.
    pub component_sizes: Vec<usize>,
}

pub fn basic_params(g: &Graph) -> BasicParams {
    let mut component_sizes: Vec<usize> = g.components().iter().map(Vec::len).collect();
    component_sizes.sort_unstable_by(|a, b| b.cmp(a));
    BasicParams { omega: clique_number(g), max_degree: g.max_degree(), girth: girth(g), degeneracy: degeneracy(g), component_sizes }
}

pub fn clique_number(g: &Graph) -> usize {
    fn grow(g: &Graph, clique: &mut Vec<usize>, candidates: &[usize], best: &mut usize) {
        *best = (*best).max(clique.len());
        if clique.len() + candidates.len() <= *best {
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..].iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            clique.push(v);
            grow(g, clique, &next, best);
            clique.pop();
        }
    }
    let mut best = 0;
    let all: Vec<usize> = g.vertices().collect();
    grow(g, &mut Vec::new(), &all, &mut best);
    best
}

/// Shortest cycle length by breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Distance {
    let mut best: Option<usize> = None;
    for s in g.vertices() {
        let mut dist = vec![usize::MAX; g.n()];
        let mut parent = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best.map_or(Distance::Infinite, Distance::Finite)
}

/// Largest minimum degree over all subgraphs, by repeatedly deleting a
/// vertex of minimum degree.
pub fn degeneracy(g: &Graph) -> usize {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut best = 0;
    for _ in 0..g.n() {
        let v = (0..g.n()).filter(|&v| alive[v]).min_by_key(|&v| deg[v]).expect("a vertex is alive");
        best = best.max(deg[v]);
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
            }
        }
    }
    best
}

/// `r -> max |B_r(v)|` over all graphs of the family and all their vertices.
pub fn dilation_profile(family: &[Graph], rmax: usize) -> BTreeMap<usize, usize> {
    let mut out: BTreeMap<usize, usize> = (0..=rmax).map(|r| (r, 0)).collect();
    for g in family {
        for v in g.vertices() {
            let d = g.bfs(&[v], Some(rmax));
            for r in 0..=rmax {
                let size = d.iter().filter(|x| x.is_at_most(r)).count();
                let e = out.get_mut(&r).expect("all radii present");
                *e = (*e).max(size);
            }
        }
    }
    out
}

/// Position of clone `c` (from 0) of path vertex `i` in the layout that
/// embeds `C_k(P_n)` into the `(k+1)`-th power of the path on `n * k`
/// vertices: clones of one vertex are consecutive.
pub fn pathpower_position(i: usize, c: usize, k: usize) -> usize {
    i * k + c
}

/// Checks that [`pathpower_position`] embeds `C_k(P_n)` (with the copy
/// numbering `v * k + c`) as a subgraph of `P_{nk}^{k+1}`.
pub fn check_pathpower_embedding(n: usize, k: usize) -> Result<bool> {
    let copied = crate::transduction::copy(&crate::graph::generators::path(n).into(), k)?.0;
    let host = crate::graph::generators::path(n * k).power(k + 1)?;
    let map: Vec<usize> = (0..n * k).map(|v| pathpower_position(v / k, v % k, k)).collect();
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    Ok(distinct.len() == map.len() && copied.graph().edges().all(|(u, v)| host.has_edge(map[u], map[v])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn pathwidth_examples() {
        assert_eq!(pathwidth(&Graph::edgeless(5)).unwrap(), 0);
        assert_eq!(pathwidth(&path(5)).unwrap(), 1);
        assert_eq!(pathwidth(&complete(4)).unwrap(), 3);
        assert_eq!(pathwidth(&cycle(6)).unwrap(), 2);
        assert_eq!(pathwidth(&star(5)).unwrap(), 1);
        assert!(pathwidth(&Graph::edgeless(PATHWIDTH_LIMIT + 1)).is_err());
    }

    #[test]
    fn vertex_separation_order_attains_value() {
        for g in [cycle(6), grid(2, 4), complete_bipartite(2, 3)] {
            let (vs, order) = vertex_separation(&g);
            let mut worst = 0;
            for i in 1..=order.len() {
                let placed: BTreeSet<usize> = order[..i].iter().copied().collect();
                let b = placed.iter().filter(|&&v| g.neighbors(v).iter().any(|u| !placed.contains(u))).count();
                worst = worst.max(b);
            }
            assert_eq!(worst, vs);
        }
    }

    #[test]
    fn treewidth_examples() {
        assert_eq!(treewidth(&complete(1)).unwrap(), 0);
        assert_eq!(treewidth(&cycle(5)).unwrap(), 2);
        let tree = Graph::new(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(treewidth(&tree).unwrap(), 1);
        assert_eq!(treewidth(&complete(5)).unwrap(), 4);
        assert_eq!(treewidth(&grid(3, 3)).unwrap(), 3);
    }

    #[test]
    fn treedepth_examples() {
        assert_eq!(treedepth(&complete(1)).unwrap(), 1);
        assert_eq!(treedepth(&path(3)).unwrap(), 2);
        assert_eq!(treedepth(&path(4)).unwrap(), 3);
        assert_eq!(treedepth(&path(7)).unwrap(), 3);
        assert_eq!(treedepth(&Graph::edgeless(0)).unwrap(), 0);
    }

    #[test]
    fn bandwidth_examples() {
        assert_eq!(bandwidth(&path(6)).unwrap(), 1);
        assert_eq!(bandwidth(&cycle(4)).unwrap(), 2);
        assert_eq!(bandwidth(&complete(4)).unwrap(), 3);
        assert_eq!(bandwidth(&star(4)).unwrap(), 2);
        let (b, layout) = bandwidth_layout(&grid(3, 3));
        assert_eq!(b, 3);
        assert!(grid(3, 3).edges().all(|(u, v)| layout[u].abs_diff(layout[v]) <= b));
    }

    #[test]
    fn star_chromatic_examples() {
        assert_eq!(star_chromatic_number(&Graph::edgeless(3)).unwrap().0, 1);
        assert_eq!(star_chromatic_number(&complete(3)).unwrap().0, 3);
        assert_eq!(star_chromatic_number(&path(4)).unwrap().0, 3);
        assert_eq!(star_chromatic_number(&star(5)).unwrap().0, 2);
        assert_eq!(star_chromatic_number(&cycle(4)).unwrap().0, 3);
    }

    #[test]
    fn basic_params_examples() {
        let c5 = basic_params(&cycle(5));
        assert_eq!(c5, BasicParams { omega: 2, max_degree: 2, girth: Distance::Finite(5), degeneracy: 2, component_sizes: vec![5] });
        let k4 = basic_params(&complete(4));
        assert_eq!(k4, BasicParams { omega: 4, max_degree: 3, girth: Distance::Finite(3), degeneracy: 3, component_sizes: vec![4] });
        let e = basic_params(&Graph::edgeless(0));
        assert_eq!(e, BasicParams { omega: 0, max_degree: 0, girth: Distance::Infinite, degeneracy: 0, component_sizes: vec![] });
    }

    #[test]
    fn dilation_examples() {
        assert_eq!(dilation_profile(&[path(5)], 2), BTreeMap::from([(0, 1), (1, 3), (2, 5)]));
        assert_eq!(dilation_profile(&[complete(1)], 3), BTreeMap::from([(0, 1), (1, 1), (2, 1), (3, 1)]));
        assert_eq!(dilation_profile(&[complete(4)], 1), BTreeMap::from([(0, 1), (1, 4)]));
    }

    #[test]
    fn pathpower_embedding() {
        for n in 1..=5 {
            for k in 1..=3 {
                assert!(check_pathpower_embedding(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    /// Independent check: brute force over all vertex orderings.
    fn brute_orderings(g: &Graph, cost: impl Fn(&[usize]) -> usize) -> usize {
        fn perms(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
            if k == items.len() {
                f(items);
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                perms(items, k + 1, f);
                items.swap(k, i);
            }
        }
        let mut best = usize::MAX;
        let mut items: Vec<usize> = g.vertices().collect();
        perms(&mut items, 0, &mut |o| best = best.min(cost(o)));
        best
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
            (1..=max_n).prop_flat_map(|n| {
                let pairs = n * (n - 1) / 2;
                (Just(n), 0..(1u64 << pairs)).prop_map(|(n, bits)| from_bits(n, bits))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn width_chain(g in small_graph(8)) {
                let tw = treewidth(&g).unwrap();
                let pw = pathwidth(&g).unwrap();
                let bw = bandwidth(&g).unwrap();
                prop_assert!(tw <= pw && pw <= bw);
                prop_assert!(treedepth(&g).unwrap() > tw);
            }

            #[test]
            fn bandwidth_matches_brute_force(g in small_graph(6)) {
                let brute = brute_orderings(&g, |o| {
                    let mut pos = vec![0; o.len()];
                    for (i, &v) in o.iter().enumerate() { pos[v] = i; }
                    g.edges().map(|(u, v)| pos[u].abs_diff(pos[v])).max().unwrap_or(0)
                });
                prop_assert_eq!(bandwidth(&g).unwrap(), brute);
            }

            #[test]
            fn pathwidth_matches_brute_force(g in small_graph(6)) {
                let brute = brute_orderings(&g, |o| {
                    (1..=o.len()).map(|i| {
                        let placed = &o[..i];
                        placed.iter().filter(|&&v| g.neighbors(v).iter().any(|u| !placed.contains(u))).count()
                    }).max().unwrap_or(0)
                });
                prop_assert_eq!(pathwidth(&g).unwrap(), brute);
            }

            #[test]
            fn star_coloring_is_valid(g in small_graph(8)) {
                let (k, col) = star_chromatic_number(&g).unwrap();
                prop_assert_eq!(col.iter().collect::<BTreeSet<_>>().len(), k);
                for [a, b, c, d] in four_vertex_paths(&g) {
                    prop_assert!(!(col[a] == col[c] && col[b] == col[d]));
                }
                prop_assert!(g.edges().all(|(u, v)| col[u] != col[v]));
            }
        }
    }
}
