//! Ehrenfeucht–Fraïssé games on colored graphs.
//!
//! A position is the list of pairs picked so far. It is lost for Duplicator
//! as soon as the pairs stop forming a partial isomorphism: equality,
//! adjacency and every color must agree pairwise. Positions are memoized by
//! rounds left and the sorted pair list.
//!
//! Twins (equally colored vertices with the same neighbors apart from each
//! other) are interchangeable by an automorphism fixing everything else, so
//! among unpicked twins only the smallest is ever tried, by either player.

use std::collections::{BTreeSet, HashMap};

use crate::encodings::CompressedCaterpillar;
use crate::error::{Error, Result};
use crate::graph::{AdjMatrix, ColoredGraph};

/// Default bound on the number of memoized positions.
pub const DEFAULT_GAME_BUDGET: u64 = 1 << 22;

struct Side {
    adj: AdjMatrix,
    /// Per vertex, one bit per color of the combined palette.
    colors: Vec<u64>,
    degree: Vec<usize>,
    /// Smaller twins of each vertex.
    twins: Vec<Vec<usize>>,
}

struct Game {
    sides: [Side; 2],
    memo: HashMap<(usize, Vec<(u8, u8)>), bool>,
    budget: u64,
}

fn side(g: &ColoredGraph, palette: &[&str]) -> Side {
    let colors: Vec<u64> = g
        .graph()
        .vertices()
        .map(|v| palette.iter().enumerate().fold(0u64, |m, (i, c)| if g.has_color(c, v) { m | 1 << i } else { m }))
        .collect();
    let adj = g.graph().matrix();
    let n = g.n();
    let twins = (0..n)
        .map(|b| {
            (0..b)
                .filter(|&a| colors[a] == colors[b] && (0..n).all(|w| w == a || w == b || adj.get(a, w) == adj.get(b, w)))
                .collect()
        })
        .collect();
    Side { adj, colors, degree: g.graph().vertices().map(|v| g.graph().degree(v)).collect(), twins }
}

impl Side {
    /// Whether `v` can be skipped because an unpicked smaller twin exists.
    fn shadowed(&self, v: usize, picked: impl Fn(usize) -> bool) -> bool {
        self.twins[v].iter().any(|&t| !picked(t))
    }
}

impl Game {
    fn new(g: &ColoredGraph, h: &ColoredGraph, budget: u64) -> Result<Self> {
        let names: BTreeSet<&str> = g.colors().keys().chain(h.colors().keys()).map(String::as_str).collect();
        let palette: Vec<&str> = names.into_iter().collect();
        if palette.len() > 64 {
            return Err(Error::InvalidArgument("at most 64 colors are supported".into()));
        }
        if g.n() > 255 || h.n() > 255 {
            return Err(Error::InvalidArgument("games support at most 255 vertices per side".into()));
        }
        Ok(Game { sides: [side(g, &palette), side(h, &palette)], memo: HashMap::new(), budget })
    }

    /// Whether adding `(a, b)` keeps the position a partial isomorphism.
    fn compatible(&self, pairs: &[(u8, u8)], a: usize, b: usize) -> bool {
        let [g, h] = &self.sides;
        g.colors[a] == h.colors[b]
            && pairs.iter().all(|&(x, y)| {
                let (x, y) = (x as usize, y as usize);
                (x == a) == (y == b) && g.adj.get(x, a) == h.adj.get(y, b)
            })
    }

    fn duplicator_wins(&mut self, pairs: &mut Vec<(u8, u8)>, rounds: usize) -> Result<bool> {
        if rounds == 0 {
            return Ok(true);
        }
        let mut key = pairs.clone();
        key.sort_unstable();
        if let Some(&w) = self.memo.get(&(rounds, key.clone())) {
            return Ok(w);
        }
        if self.memo.len() as u64 >= self.budget {
            let (n, m) = (self.sides[0].colors.len() as f64, self.sides[1].colors.len() as f64);
            return Err(Error::BudgetExceeded { log2_size: (rounds as f64) * (n * m).max(1.0).log2(), budget: self.budget });
        }
        let mut result = true;
        'spoiler: for s in 0..2 {
            for a in 0..self.sides[s].colors.len() {
                let picked = |side: usize, v: usize| pairs.iter().any(|p| (if side == 0 { p.0 } else { p.1 }) as usize == v);
                // Picking an already picked vertex gives Spoiler nothing.
                if picked(s, a) || self.sides[s].shadowed(a, |t| picked(s, t)) {
                    continue;
                }
                let (mine, theirs) = (&self.sides[s], &self.sides[1 - s]);
                let mut replies: Vec<usize> =
                    (0..theirs.colors.len()).filter(|&b| !picked(1 - s, b) && !theirs.shadowed(b, |t| picked(1 - s, t))).collect();
                replies.sort_by_key(|&b| theirs.degree[b].abs_diff(mine.degree[a]));
                let mut answered = false;
                for b in replies {
                    let (ga, hb) = if s == 0 { (a, b) } else { (b, a) };
                    if !self.compatible(pairs, ga, hb) {
                        continue;
                    }
                    pairs.push((ga as u8, hb as u8));
                    let won = self.duplicator_wins(pairs, rounds - 1);
                    pairs.pop();
                    if won? {
                        answered = true;
                        break;
                    }
                }
                if !answered {
                    result = false;
                    break 'spoiler;
                }
            }
        }
        self.memo.insert((rounds, key), result);
        Ok(result)
    }
}

/// Whether Duplicator wins the `q`-round game on `g` and `h`.
pub fn duplicator_wins(g: &ColoredGraph, h: &ColoredGraph, q: usize) -> Result<bool> {
    duplicator_wins_with_budget(g, h, q, DEFAULT_GAME_BUDGET)
}

pub fn duplicator_wins_with_budget(g: &ColoredGraph, h: &ColoredGraph, q: usize, budget: u64) -> Result<bool> {
    Game::new(g, h, budget)?.duplicator_wins(&mut Vec::new(), q)
}

/// The least `q <= qmax` for which Spoiler wins, or `None` when Duplicator
/// wins every game up to `qmax` rounds.
pub fn distinguishing_rank(g: &ColoredGraph, h: &ColoredGraph, qmax: usize) -> Result<Option<usize>> {
    for q in 0..=qmax {
        if !duplicator_wins(g, h, q)? {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// Plays the `q`-round game on the caterpillars expanded from the same spine
/// with multiplicities `cc.f` and `f2`. Requires `f1 <= f2` pointwise and
/// `min(f1, q) = min(f2, q)`, under which Duplicator is expected to win.
pub fn caterpillar_clone_check(cc: &CompressedCaterpillar, f2: &crate::encodings::Multiplicities, q: usize) -> Result<bool> {
    let keys: BTreeSet<_> = cc.f.keys().chain(f2.keys()).collect();
    for key in keys {
        let a = cc.f.get(key).copied().unwrap_or(0);
        let b = f2.get(key).copied().unwrap_or(0);
        if a > b || a.min(q) != b.min(q) {
            return Err(Error::Precondition(format!(
                "multiplicities at {key:?} are {a} and {b}; need f1 <= f2 and equal after truncation at {q}"
            )));
        }
    }
    let other = CompressedCaterpillar { f: f2.clone(), ..cc.clone() };
    duplicator_wins(&cc.expand()?, &other.expand()?, q)
}
