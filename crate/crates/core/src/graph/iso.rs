//! Isomorphism by colour refinement followed by backtracking.

use std::collections::{BTreeSet, HashMap};

use super::{AdjMatrix, ColoredGraph, Graph};

/// Stable colour refinement run on both graphs at once so that the labels are
/// comparable. Returns the final labels of `g` and `h`.
fn refine(g: &Graph, h: &Graph, g0: Vec<usize>, h0: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let mut lg = g0;
    let mut lh = h0;
    let mut classes = count_classes(&lg, &lh);
    loop {
        let mut table: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut sig = |graph: &Graph, labels: &[usize], v: usize| {
            let mut around: Vec<usize> = graph.neighbors(v).iter().map(|&w| labels[w]).collect();
            around.sort_unstable();
            let key = (labels[v], around);
            let next = table.len();
            *table.entry(key).or_insert(next)
        };
        let ng: Vec<usize> = (0..g.n()).map(|v| sig(g, &lg, v)).collect();
        let nh: Vec<usize> = (0..h.n()).map(|v| sig(h, &lh, v)).collect();
        let next_classes = count_classes(&ng, &nh);
        lg = ng;
        lh = nh;
        if next_classes == classes {
            return (lg, lh);
        }
        classes = next_classes;
    }
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    a.iter().chain(b).collect::<BTreeSet<_>>().len()
}

fn histogram(labels: &[usize]) -> Vec<usize> {
    let mut v = labels.to_vec();
    v.sort_unstable();
    v
}

struct Search<'a> {
    gm: AdjMatrix,
    hm: AdjMatrix,
    lg: &'a [usize],
    lh: &'a [usize],
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let a = self.order[depth];
        for b in 0..self.lh.len() {
            if self.used[b] || self.lh[b] != self.lg[a] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&p| self.gm.get(a, p) == self.hm.get(b, self.map[p]));
            if !consistent {
                continue;
            }
            self.map[a] = b;
            self.used[b] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[b] = false;
        }
        false
    }
}

/// Vertex order for the search: rarest label first, then keep growing along
/// edges so that adjacency constraints bite early.
fn search_order(g: &Graph, labels: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut freq: HashMap<usize, usize> = HashMap::new();
    for &l in labels {
        *freq.entry(l).or_default() += 1;
    }
    let mut placed = vec![false; n];
    let mut touch = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(touch[v]), freq[&labels[v]], v))
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
        for &w in g.neighbors(next) {
            touch[w] += 1;
        }
    }
    order
}

fn find(g: &Graph, h: &Graph, g0: Vec<usize>, h0: Vec<usize>) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (lg, lh) = refine(g, h, g0, h0);
    if histogram(&lg) != histogram(&lh) {
        return None;
    }
    let order = search_order(g, &lg);
    let mut s = Search {
        gm: g.matrix(),
        hm: h.matrix(),
        lg: &lg,
        lh: &lh,
        order,
        map: vec![usize::MAX; g.n()],
        used: vec![false; h.n()],
    };
    s.extend(0).then_some(s.map)
}

/// An isomorphism `g -> h` as a vertex map, if one exists.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    find(g, h, vec![0; g.n()], vec![0; h.n()])
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    isomorphism(g, h).is_some()
}

/// Isomorphism that also preserves every color. Both graphs must use the
/// same color names for a match.
pub fn colored_isomorphism(g: &ColoredGraph, h: &ColoredGraph) -> Option<Vec<usize>> {
    let names: BTreeSet<&String> = g.colors().keys().chain(h.colors().keys()).collect();
    let mut table: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut label = |cg: &ColoredGraph, v: usize| {
        let key: Vec<bool> = names.iter().map(|n| cg.has_color(n, v)).collect();
        let next = table.len();
        *table.entry(key).or_insert(next)
    };
    let g0 = (0..g.n()).map(|v| label(g, v)).collect();
    let h0 = (0..h.n()).map(|v| label(h, v)).collect();
    find(g.graph(), h.graph(), g0, h0)
}

/// A set of graphs kept up to isomorphism, bucketed by cheap invariants.
#[derive(Default, Debug, Clone)]
pub struct IsoClasses {
    buckets: HashMap<(usize, usize, Vec<usize>), Vec<usize>>,
    members: Vec<Graph>,
}

impl IsoClasses {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(g: &Graph) -> (usize, usize, Vec<usize>) {
        let mut degs: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        degs.sort_unstable();
        (g.n(), g.edge_count(), degs)
    }

    /// Index of the class of `g`, if present.
    pub fn find(&self, g: &Graph) -> Option<usize> {
        self.buckets.get(&Self::key(g))?.iter().copied().find(|&i| is_isomorphic(&self.members[i], g))
    }

    /// Inserts `g`; returns `true` when it opened a new class.
    pub fn insert(&mut self, g: Graph) -> bool {
        if self.find(&g).is_some() {
            return false;
        }
        let idx = self.members.len();
        self.buckets.entry(Self::key(&g)).or_default().push(idx);
        self.members.push(g);
        true
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.find(g).is_some()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Graph> {
        self.members.iter()
    }

    pub fn into_vec(self) -> Vec<Graph> {
        self.members
    }
}
