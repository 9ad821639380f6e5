//! Brute-force evaluation.
//!
//! A formula is compiled once into a tree over numbered variable slots.
//! Evaluation enumerates witnesses for every quantifier. The only shortcut is a
//! memo table per quantifier node, keyed by the values of that node's free
//! variables: the truth value of a subformula depends on nothing else, so the
//! result equals naive enumeration while repeated subformulas are not re-run.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet};

use super::{Assignment, Formula};
use crate::error::{Error, Result};
use crate::graph::{AdjMatrix, ColoredGraph};

const INF: u32 = u32::MAX;
/// Memo tables larger than this many entries are not allocated.
const MEMO_LIMIT: usize = 1 << 22;

/// A colored graph prepared for repeated evaluation.
pub struct Model<'g> {
    graph: &'g ColoredGraph,
    adj: AdjMatrix,
    dist: OnceCell<Vec<Vec<u32>>>,
}

impl<'g> Model<'g> {
    pub fn new(graph: &'g ColoredGraph) -> Self {
        Model { graph, adj: graph.graph().matrix(), dist: OnceCell::new() }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &'g ColoredGraph {
        self.graph
    }

    fn distances(&self) -> &Vec<Vec<u32>> {
        self.dist.get_or_init(|| {
            let g = self.graph.graph();
            g.vertices()
                .map(|v| g.bfs(&[v], None).into_iter().map(|d| d.finite().map_or(INF, |d| d as u32)).collect())
                .collect()
        })
    }
}

#[derive(Debug, Clone)]
enum Node {
    Const(bool),
    Edge(usize, usize),
    Eq(usize, usize),
    Pred(usize, usize),
    DistLe(usize, usize, u32),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Quant { universal: bool, slot: usize, body: Box<Node>, memo: Option<usize>, free: Vec<usize> },
}

/// A formula with its variables resolved to slots; the first slots are the
/// declared free variables, in order.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    root: Node,
    free: Vec<String>,
    slots: usize,
    predicates: Vec<String>,
    memo_nodes: usize,
}

impl CompiledFormula {
    /// Compiles `phi` for evaluation with the free variables listed in
    /// `free`. Every free variable of `phi` must appear in the list.
    pub fn compile(phi: &Formula, free: &[&str]) -> Result<Self> {
        if let Some(v) = phi.free_vars().into_iter().find(|v| !free.contains(&v.as_str())) {
            return Err(Error::MissingAssignment(v));
        }
        let mut names: Vec<String> = free.iter().map(|s| s.to_string()).collect();
        for v in phi.all_vars() {
            if !names.contains(&v) {
                names.push(v);
            }
        }
        let mut c = Compiler { names, predicates: Vec::new(), memo_nodes: 0 };
        let (root, _) = c.node(phi);
        Ok(CompiledFormula {
            root,
            free: free.iter().map(|s| s.to_string()).collect(),
            slots: c.names.len(),
            predicates: c.predicates,
            memo_nodes: c.memo_nodes,
        })
    }

    pub fn free(&self) -> &[String] {
        &self.free
    }
}

struct Compiler {
    names: Vec<String>,
    predicates: Vec<String>,
    memo_nodes: usize,
}

impl Compiler {
    fn slot(&self, v: &str) -> usize {
        self.names.iter().position(|n| n == v).expect("every variable has a slot")
    }

    /// Returns the node and the set of slots free in it.
    fn node(&mut self, f: &Formula) -> (Node, BTreeSet<usize>) {
        let pair = |c: &Self, a: &str, b: &str| {
            let (a, b) = (c.slot(a), c.slot(b));
            (a, b, BTreeSet::from([a, b]))
        };
        match f {
            Formula::True => (Node::Const(true), BTreeSet::new()),
            Formula::False => (Node::Const(false), BTreeSet::new()),
            Formula::Edge(x, y) => {
                let (a, b, s) = pair(self, x, y);
                (Node::Edge(a, b), s)
            }
            Formula::Eq(x, y) => {
                let (a, b, s) = pair(self, x, y);
                (Node::Eq(a, b), s)
            }
            Formula::DistLe(x, y, r) => {
                let (a, b, s) = pair(self, x, y);
                (Node::DistLe(a, b, (*r).min(INF as usize - 1) as u32), s)
            }
            Formula::Pred(name, x) => {
                let idx = match self.predicates.iter().position(|p| p == name) {
                    Some(i) => i,
                    None => {
                        self.predicates.push(name.clone());
                        self.predicates.len() - 1
                    }
                };
                let a = self.slot(x);
                (Node::Pred(idx, a), BTreeSet::from([a]))
            }
            Formula::Not(p) => {
                let (n, s) = self.node(p);
                (Node::Not(Box::new(n)), s)
            }
            Formula::And(p, q) | Formula::Or(p, q) | Formula::Implies(p, q) | Formula::Iff(p, q) => {
                let (l, mut s) = self.node(p);
                let (r, s2) = self.node(q);
                s.extend(s2);
                let (l, r) = (Box::new(l), Box::new(r));
                let node = match f {
                    Formula::And(..) => Node::And(l, r),
                    Formula::Or(..) => Node::Or(l, r),
                    Formula::Implies(..) => Node::Implies(l, r),
                    _ => Node::Iff(l, r),
                };
                (node, s)
            }
            Formula::Exists(v, p) | Formula::Forall(v, p) => {
                let slot = self.slot(v);
                let (body, mut s) = self.node(p);
                s.remove(&slot);
                let memo = if s.len() <= 3 {
                    self.memo_nodes += 1;
                    Some(self.memo_nodes - 1)
                } else {
                    None
                };
                let node = Node::Quant {
                    universal: matches!(f, Formula::Forall(..)),
                    slot,
                    body: Box::new(body),
                    memo,
                    free: s.iter().copied().collect(),
                };
                (node, s)
            }
        }
    }
}

/// Evaluation state for one compiled formula on one model.
pub struct Evaluator<'m, 'g> {
    model: &'m Model<'g>,
    formula: &'m CompiledFormula,
    preds: Vec<Vec<bool>>,
    values: Vec<usize>,
    memo: Vec<Vec<u8>>,
}

impl<'m, 'g> Evaluator<'m, 'g> {
    pub fn new(model: &'m Model<'g>, formula: &'m CompiledFormula) -> Self {
        let n = model.n();
        let preds = formula
            .predicates
            .iter()
            .map(|name| {
                let mut bits = vec![false; n];
                // A color the graph does not declare is the empty relation.
                for &v in model.graph.color(name).into_iter().flatten() {
                    bits[v] = true;
                }
                bits
            })
            .collect();
        Evaluator { model, formula, preds, values: vec![0; formula.slots], memo: vec![Vec::new(); formula.memo_nodes] }
    }

    /// Evaluates with the free variables bound to `args`, positionally.
    pub fn eval(&mut self, args: &[usize]) -> Result<bool> {
        if args.len() != self.formula.free.len() {
            let missing = self.formula.free.get(args.len()).cloned().unwrap_or_default();
            return Err(Error::MissingAssignment(missing));
        }
        for &a in args {
            self.model.graph.graph().check_vertex(a)?;
        }
        self.values[..args.len()].copy_from_slice(args);
        let root = &self.formula.root;
        Ok(self.node(root))
    }

    fn node(&mut self, node: &Node) -> bool {
        let v = &self.values;
        match node {
            Node::Const(b) => *b,
            Node::Edge(a, b) => self.model.adj.get(v[*a], v[*b]),
            Node::Eq(a, b) => v[*a] == v[*b],
            Node::Pred(p, a) => self.preds[*p][v[*a]],
            Node::DistLe(a, b, r) => {
                let (x, y) = (v[*a], v[*b]);
                x == y || (*r > 0 && self.model.distances()[x][y] <= *r)
            }
            Node::Not(p) => !self.node(p),
            Node::And(p, q) => self.node(p) && self.node(q),
            Node::Or(p, q) => self.node(p) || self.node(q),
            Node::Implies(p, q) => !self.node(p) || self.node(q),
            Node::Iff(p, q) => self.node(p) == self.node(q),
            Node::Quant { universal, slot, body, memo, free } => {
                let n = self.model.n();
                let key = memo.and_then(|m| {
                    let size = n.checked_pow(free.len() as u32).filter(|&s| s <= MEMO_LIMIT)?;
                    if self.memo[m].is_empty() {
                        self.memo[m] = vec![2; size.max(1)];
                    }
                    let k = free.iter().fold(0, |acc, &s| acc * n + self.values[s]);
                    Some((m, k))
                });
                if let Some((m, k)) = key {
                    if self.memo[m][k] != 2 {
                        return self.memo[m][k] == 1;
                    }
                }
                let saved = self.values[*slot];
                let mut result = *universal;
                for w in 0..n {
                    self.values[*slot] = w;
                    if self.node(body) != *universal {
                        result = !*universal;
                        break;
                    }
                }
                self.values[*slot] = saved;
                if let Some((m, k)) = key {
                    self.memo[m][k] = result as u8;
                }
                result
            }
        }
    }
}

/// Evaluates `phi` on `g` under assignment `a`, which must cover the free
/// variables of `phi`.
pub fn evaluate(g: &ColoredGraph, phi: &Formula, a: &Assignment) -> Result<bool> {
    let free: Vec<String> = phi.free_vars().into_iter().collect();
    if let Some(v) = free.iter().find(|v| !a.contains_key(*v)) {
        return Err(Error::MissingAssignment(v.clone()));
    }
    let names: Vec<&str> = free.iter().map(String::as_str).collect();
    let compiled = CompiledFormula::compile(phi, &names)?;
    let model = Model::new(g);
    let args: Vec<usize> = free.iter().map(|v| a[v]).collect();
    Evaluator::new(&model, &compiled).eval(&args)
}

/// Convenience for building assignments: `assign(&[("x", 0), ("y", 2)])`.
pub fn assign(pairs: &[(&str, usize)]) -> Assignment {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>()
}
