//! First-order formulas over colored graphs.
//!
//! The signature is the edge relation `E`, equality, and one unary predicate
//! per color. `dist(x,y) <= r` is a primitive with breadth-first-search
//! semantics; [`Formula::expand_distances`] rewrites it into plain first-order
//! logic when the two need to be compared. Quantifier rank is always the rank
//! of the formula as written, so distance atoms count as rank 0.

mod eval;
mod locality;
mod parser;

pub use eval::{assign, evaluate, CompiledFormula, Evaluator, Model};
pub use locality::{check_r_local, check_strongly_local, LocalityReport};
pub use parser::{parse_formula, parse_with_free};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub type Var = String;

/// Map from free-variable names to vertices.
pub type Assignment = std::collections::BTreeMap<Var, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Edge(Var, Var),
    Eq(Var, Var),
    Pred(String, Var),
    DistLe(Var, Var, usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

// Builders. They keep call sites in the encoders readable.
impl Formula {
    pub fn edge(x: &str, y: &str) -> Self {
        Formula::Edge(x.into(), y.into())
    }

    pub fn eq(x: &str, y: &str) -> Self {
        Formula::Eq(x.into(), y.into())
    }

    pub fn neq(x: &str, y: &str) -> Self {
        Formula::eq(x, y).not()
    }

    pub fn pred(name: &str, x: &str) -> Self {
        Formula::Pred(name.into(), x.into())
    }

    pub fn dist_le(x: &str, y: &str, r: usize) -> Self {
        Formula::DistLe(x.into(), y.into(), r)
    }

    /// `dist(x, y) = d`.
    pub fn dist_eq(x: &str, y: &str, d: usize) -> Self {
        match d {
            0 => Formula::eq(x, y),
            _ => Formula::dist_le(x, y, d).and(Formula::dist_le(x, y, d - 1).not()),
        }
    }

    /// `0 < dist(x, y) < d`.
    pub fn dist_between(x: &str, y: &str, d: usize) -> Self {
        match d {
            0 | 1 => Formula::False,
            _ => Formula::neq(x, y).and(Formula::dist_le(x, y, d - 1)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    pub fn exists(var: &str, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    /// Conjunction of all items; `true` when empty.
    pub fn all(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Disjunction of all items; `false` when empty.
    pub fn any(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut add = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Edge(a, b) | Formula::Eq(a, b) | Formula::DistLe(a, b, _) => {
                add(a, bound);
                add(b, bound);
            }
            Formula::Pred(_, a) => add(a, bound),
            Formula::Not(p) => p.collect_free(bound, out),
            Formula::And(p, q) | Formula::Or(p, q) | Formula::Implies(p, q) | Formula::Iff(p, q) => {
                p.collect_free(bound, out);
                q.collect_free(bound, out);
            }
            Formula::Exists(v, p) | Formula::Forall(v, p) => {
                bound.push(v.clone());
                p.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Maximum nesting depth of quantifiers.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::Not(p) => p.quantifier_rank(),
            Formula::And(p, q) | Formula::Or(p, q) | Formula::Implies(p, q) | Formula::Iff(p, q) => {
                p.quantifier_rank().max(q.quantifier_rank())
            }
            Formula::Exists(_, p) | Formula::Forall(_, p) => 1 + p.quantifier_rank(),
            _ => 0,
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.quantifier_rank() == 0
    }

    /// Names of the unary predicates used.
    pub fn predicates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Pred(name, _) = f {
                out.insert(name.clone());
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(p) | Formula::Exists(_, p) | Formula::Forall(_, p) => p.visit(f),
            Formula::And(p, q) | Formula::Or(p, q) | Formula::Implies(p, q) | Formula::Iff(p, q) => {
                p.visit(f);
                q.visit(f);
            }
            _ => {}
        }
    }

    /// Every variable name occurring, free or bound.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Edge(a, b) | Formula::Eq(a, b) | Formula::DistLe(a, b, _) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Formula::Pred(_, a) | Formula::Exists(a, _) | Formula::Forall(a, _) => {
                out.insert(a.clone());
            }
            _ => {}
        });
        out
    }

    /// Rejects formulas that bind a variable twice on one branch, or that bind
    /// one of `free`.
    pub fn check_no_shadowing(&self, free: &[&str]) -> Result<()> {
        fn go(f: &Formula, bound: &mut Vec<Var>) -> Result<()> {
            match f {
                Formula::Not(p) => go(p, bound),
                Formula::And(p, q) | Formula::Or(p, q) | Formula::Implies(p, q) | Formula::Iff(p, q) => {
                    go(p, bound)?;
                    go(q, bound)
                }
                Formula::Exists(v, p) | Formula::Forall(v, p) => {
                    if bound.contains(v) {
                        return Err(Error::Shadowing(v.clone()));
                    }
                    bound.push(v.clone());
                    let r = go(p, bound);
                    bound.pop();
                    r
                }
                _ => Ok(()),
            }
        }
        go(self, &mut free.iter().map(|s| s.to_string()).collect())
    }

    /// Renames free occurrences of `from` to `to`.
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        let r = |v: &Var| if v == from { to.to_string() } else { v.clone() };
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Edge(a, b) => Formula::Edge(r(a), r(b)),
            Formula::Eq(a, b) => Formula::Eq(r(a), r(b)),
            Formula::DistLe(a, b, d) => Formula::DistLe(r(a), r(b), *d),
            Formula::Pred(n, a) => Formula::Pred(n.clone(), r(a)),
            Formula::Not(p) => p.rename_free(from, to).not(),
            Formula::And(p, q) => p.rename_free(from, to).and(q.rename_free(from, to)),
            Formula::Or(p, q) => p.rename_free(from, to).or(q.rename_free(from, to)),
            Formula::Implies(p, q) => p.rename_free(from, to).implies(q.rename_free(from, to)),
            Formula::Iff(p, q) => p.rename_free(from, to).iff(q.rename_free(from, to)),
            Formula::Exists(v, p) | Formula::Forall(v, p) if v == from => self.clone(),
            Formula::Exists(v, p) => Formula::exists(v, p.rename_free(from, to)),
            Formula::Forall(v, p) => Formula::forall(v, p.rename_free(from, to)),
        }
    }

    /// Guards every quantifier by `dist(x, z) <= t`, so that the result at a
    /// vertex `u` holds exactly when the formula holds at `u` in the radius-`t`
    /// ball around `u`. The formula must have exactly one free variable.
    pub fn t_localize(&self, t: usize) -> Result<Formula> {
        let free = self.free_vars();
        if free.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "localization needs exactly one free variable, found {}",
                free.len()
            )));
        }
        let x = free.into_iter().next().expect("one free variable");
        self.check_no_shadowing(&[&x])?;
        Ok(self.localize_at(&x, t))
    }

    fn localize_at(&self, x: &str, t: usize) -> Formula {
        match self {
            Formula::Not(p) => p.localize_at(x, t).not(),
            Formula::And(p, q) => p.localize_at(x, t).and(q.localize_at(x, t)),
            Formula::Or(p, q) => p.localize_at(x, t).or(q.localize_at(x, t)),
            Formula::Implies(p, q) => p.localize_at(x, t).implies(q.localize_at(x, t)),
            Formula::Iff(p, q) => p.localize_at(x, t).iff(q.localize_at(x, t)),
            Formula::Exists(z, p) => Formula::exists(z, Formula::dist_le(x, z, t).and(p.localize_at(x, t))),
            Formula::Forall(z, p) => Formula::forall(z, Formula::dist_le(x, z, t).implies(p.localize_at(x, t))),
            atom => atom.clone(),
        }
    }

    /// Negation normal form over `{and, or, exists, forall}`; implications and
    /// biconditionals are unfolded.
    pub fn nnf(&self) -> Formula {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> Formula {
        let lit = |f: Formula| if positive { f } else { f.not() };
        match self {
            Formula::True => if positive { Formula::True } else { Formula::False },
            Formula::False => if positive { Formula::False } else { Formula::True },
            Formula::Not(p) => p.nnf_signed(!positive),
            Formula::And(p, q) if positive => p.nnf_signed(true).and(q.nnf_signed(true)),
            Formula::And(p, q) => p.nnf_signed(false).or(q.nnf_signed(false)),
            Formula::Or(p, q) if positive => p.nnf_signed(true).or(q.nnf_signed(true)),
            Formula::Or(p, q) => p.nnf_signed(false).and(q.nnf_signed(false)),
            Formula::Implies(p, q) if positive => p.nnf_signed(false).or(q.nnf_signed(true)),
            Formula::Implies(p, q) => p.nnf_signed(true).and(q.nnf_signed(false)),
            Formula::Iff(p, q) => {
                let both = p.nnf_signed(true).and(q.nnf_signed(positive));
                let neither = p.nnf_signed(false).and(q.nnf_signed(!positive));
                both.or(neither)
            }
            Formula::Exists(v, p) if positive => Formula::exists(v, p.nnf_signed(true)),
            Formula::Exists(v, p) => Formula::forall(v, p.nnf_signed(false)),
            Formula::Forall(v, p) if positive => Formula::forall(v, p.nnf_signed(true)),
            Formula::Forall(v, p) => Formula::exists(v, p.nnf_signed(false)),
            atom => lit(atom.clone()),
        }
    }

    /// Replaces every `dist(x,y) <= r` by the pure first-order formula
    /// `delta_r(x,y)`: `x = y` for `r = 0`, else
    /// `exists w (delta_{r-1}(x,w) & (E(w,y) | w = y))`. Fresh variable names
    /// avoid every name already in the formula.
    pub fn expand_distances(&self) -> Formula {
        let mut taken = self.all_vars();
        self.expand_with(&mut taken)
    }

    fn expand_with(&self, taken: &mut BTreeSet<Var>) -> Formula {
        match self {
            Formula::DistLe(x, y, r) => delta(x, y, *r, taken),
            Formula::Not(p) => p.expand_with(taken).not(),
            Formula::And(p, q) => p.expand_with(taken).and(q.expand_with(taken)),
            Formula::Or(p, q) => p.expand_with(taken).or(q.expand_with(taken)),
            Formula::Implies(p, q) => p.expand_with(taken).implies(q.expand_with(taken)),
            Formula::Iff(p, q) => p.expand_with(taken).iff(q.expand_with(taken)),
            Formula::Exists(v, p) => Formula::exists(v, p.expand_with(taken)),
            Formula::Forall(v, p) => Formula::forall(v, p.expand_with(taken)),
            atom => atom.clone(),
        }
    }
}

fn fresh(taken: &mut BTreeSet<Var>) -> Var {
    let name = (0..).map(|i| format!("w{i}")).find(|n| !taken.contains(n)).expect("fresh name");
    taken.insert(name.clone());
    name
}

fn delta(x: &str, y: &str, r: usize, taken: &mut BTreeSet<Var>) -> Formula {
    if r == 0 {
        return Formula::eq(x, y);
    }
    let w = fresh(taken);
    let step = Formula::edge(&w, y).or(Formula::eq(&w, y));
    Formula::exists(&w, delta(x, &w, r - 1, taken).and(step))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Edge(a, b) => write!(f, "E({a},{b})"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Pred(n, a) => write!(f, "{n}({a})"),
            Formula::DistLe(a, b, r) => write!(f, "dist({a},{b}) <= {r}"),
            Formula::Not(p) => match **p {
                Formula::Eq(ref a, ref b) => write!(f, "{a} != {b}"),
                ref inner if inner.is_binary() || matches!(inner, Formula::DistLe(..)) => write!(f, "!({inner})"),
                ref inner => write!(f, "!{inner}"),
            },
            Formula::And(p, q) => write!(f, "({p} & {q})"),
            Formula::Or(p, q) => write!(f, "({p} | {q})"),
            Formula::Implies(p, q) => write!(f, "({p} -> {q})"),
            Formula::Iff(p, q) => write!(f, "({p} <-> {q})"),
            Formula::Exists(v, p) => write!(f, "exists {v} {}", Parened(p)),
            Formula::Forall(v, p) => write!(f, "forall {v} {}", Parened(p)),
        }
    }
}

impl Formula {
    fn is_binary(&self) -> bool {
        matches!(self, Formula::And(..) | Formula::Or(..) | Formula::Implies(..) | Formula::Iff(..))
    }
}

/// Quantifier bodies are always printed inside one pair of parentheses.
struct Parened<'a>(&'a Formula);

impl fmt::Display for Parened<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_binary() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

#[cfg(test)]
mod tests;
