//! Oracles and generators shared by the integration tests. Everything here
//! is deliberately naive and independent of the code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use fotrans::graph::generators::from_bits;
use fotrans::logic::{assign, evaluate};
use fotrans::{ColoredGraph, Formula, Graph};
use rand::Rng;

/// Uniformly random labeled graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let pairs = n * n.saturating_sub(1) / 2;
    let bits = (0..pairs).fold(0u64, |b, i| if rng.gen_bool(p) { b | 1 << i } else { b });
    from_bits(n, bits)
}

/// Random coloring of `g` by the given names.
pub fn random_colors(rng: &mut impl Rng, g: Graph, names: &[&str]) -> ColoredGraph {
    let mut c = ColoredGraph::from(g);
    for name in names {
        let set = (0..c.n()).filter(|_| rng.gen_bool(0.4)).collect();
        c.add_color(*name, set).unwrap();
    }
    c
}

/// Rank-`k` Hintikka formula of the tuple `tuple` in `g`, over variables
/// `x1, x2, ...`. Two structures satisfy the same rank-`q` sentences exactly
/// when each satisfies the other's rank-`q` Hintikka sentence.
fn hintikka(g: &ColoredGraph, palette: &[String], tuple: &mut Vec<usize>, k: usize) -> Formula {
    let var = |i: usize| format!("x{}", i + 1);
    let mut atoms = Vec::new();
    for (i, &a) in tuple.iter().enumerate() {
        for c in palette {
            let p = Formula::pred(c, &var(i));
            atoms.push(if g.has_color(c, a) { p } else { p.not() });
        }
        for (j, &b) in tuple.iter().enumerate().skip(i + 1) {
            let eq = Formula::eq(&var(i), &var(j));
            atoms.push(if a == b { eq } else { eq.not() });
            let e = Formula::edge(&var(i), &var(j));
            atoms.push(if g.graph().has_edge(a, b) { e } else { e.not() });
        }
    }
    let mut parts = vec![Formula::all(atoms)];
    if k > 0 {
        let x = var(tuple.len());
        let mut subs = BTreeMap::new();
        for v in 0..g.n() {
            tuple.push(v);
            let f = hintikka(g, palette, tuple, k - 1);
            tuple.pop();
            subs.insert(f.to_string(), f);
        }
        for f in subs.values() {
            parts.push(Formula::exists(&x, f.clone()));
        }
        parts.push(Formula::forall(&x, Formula::any(subs.into_values())));
    }
    Formula::all(parts)
}

/// Whether `g` and `h` agree on all sentences of quantifier rank `q`, decided
/// through Hintikka sentences and the formula evaluator.
pub fn same_rank_q_sentences(g: &ColoredGraph, h: &ColoredGraph, q: usize) -> bool {
    let palette: Vec<String> = g.colors().keys().chain(h.colors().keys()).cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let phi = hintikka(g, &palette, &mut Vec::new(), q);
    let psi = hintikka(h, &palette, &mut Vec::new(), q);
    let none = assign(&[]);
    evaluate(h, &phi, &none).unwrap() && evaluate(g, &psi, &none).unwrap()
}

/// Random formula with free variable `x` (always occurring), built from
/// `E`, `=`, colors `A`/`B`, connectives and quantifiers over fresh names.
pub fn random_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    fn go(rng: &mut impl Rng, vars: &mut Vec<String>, depth: usize) -> Formula {
        let pick = |rng: &mut dyn rand::RngCore, vars: &[String]| vars[rng.gen_range(0..vars.len())].clone();
        let choice = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..8) };
        match choice {
            0 => Formula::edge(&pick(rng, vars), &pick(rng, vars)),
            1 => Formula::eq(&pick(rng, vars), &pick(rng, vars)),
            2 => Formula::pred(if rng.gen_bool(0.5) { "A" } else { "B" }, &pick(rng, vars)),
            3 => go(rng, vars, depth - 1).not(),
            4 => go(rng, vars, depth - 1).and(go(rng, vars, depth - 1)),
            5 => go(rng, vars, depth - 1).or(go(rng, vars, depth - 1)),
            q => {
                let v = format!("v{}", vars.len());
                vars.push(v.clone());
                let body = go(rng, vars, depth - 1);
                vars.pop();
                if q == 6 {
                    Formula::exists(&v, body)
                } else {
                    Formula::forall(&v, body)
                }
            }
        }
    }
    let f = go(rng, &mut vec!["x".to_string()], depth);
    if f.free_vars().is_empty() {
        f.and(Formula::eq("x", "x"))
    } else {
        f
    }
}

/// Whether two closed segments with rational endpoints share a point; uses
/// a parametric solve in exact integer arithmetic.
fn segments_touch(p: (i64, i64), q: (i64, i64), r: (i64, i64), s: (i64, i64)) -> bool {
    let (dx1, dy1, dx2, dy2) = (q.0 - p.0, q.1 - p.1, s.0 - r.0, s.1 - r.1);
    let den = dx1 * dy2 - dy1 * dx2;
    let (ex, ey) = (r.0 - p.0, r.1 - p.1);
    if den == 0 {
        // Parallel: they meet only if collinear with overlapping ranges.
        if ex * dy1 - ey * dx1 != 0 {
            return false;
        }
        let proj = |pt: (i64, i64)| (pt.0 - p.0) * dx1 + (pt.1 - p.1) * dy1;
        let len = dx1 * dx1 + dy1 * dy1;
        let (a, b) = (proj(r).min(proj(s)), proj(r).max(proj(s)));
        return b >= 0 && a <= len;
    }
    let t = ex * dy2 - ey * dx2;
    let u = ex * dy1 - ey * dx1;
    let inside = |num: i64| if den > 0 { (0..=den).contains(&num) } else { (den..=0).contains(&num) };
    inside(t) && inside(u)
}

/// Whether the straight-line drawing is plane: distinct points, no vertex
/// inside an edge, and edges meeting only at shared endpoints.
pub fn plane_drawing(g: &Graph, at: &[(i64, i64)]) -> bool {
    if at.iter().collect::<BTreeSet<_>>().len() != g.n() {
        return false;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        if g.vertices().any(|v| v != a && v != b && segments_touch(at[a], at[b], at[v], at[v])) {
            return false;
        }
        for &(c, d) in &edges[i + 1..] {
            let shared: Vec<usize> = [c, d].into_iter().filter(|&x| x == a || x == b).collect();
            match shared.len() {
                0 if segments_touch(at[a], at[b], at[c], at[d]) => return false,
                1 => {
                    // Edges sharing an endpoint must not overlap.
                    let (o, x, y) = (shared[0], if a == shared[0] { b } else { a }, if c == shared[0] { d } else { c });
                    let (v1, v2) = ((at[x].0 - at[o].0, at[x].1 - at[o].1), (at[y].0 - at[o].0, at[y].1 - at[o].1));
                    if v1.0 * v2.1 - v1.1 * v2.0 == 0 && v1.0 * v2.0 + v1.1 * v2.1 > 0 {
                        return false;
                    }
                }
                _ => {}
            }
        }
    }
    true
}

/// Induced subgraphs of `g` up to isomorphism, by direct subset enumeration.
pub fn induced_subgraph_classes(g: &Graph) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    for mask in 0u32..1 << g.n() {
        let set: BTreeSet<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        let (h, _) = g.induced_subgraph(&set).unwrap();
        if !out.iter().any(|o| fotrans::graph::is_isomorphic(o, &h)) {
            out.push(h);
        }
    }
    out
}
