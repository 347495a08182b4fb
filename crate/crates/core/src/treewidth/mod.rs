//! Tree decompositions: exact treewidth for small graphs, a min-fill upper
//! bound, validation, nice normal form and a line-based text format.

mod nice;

pub use nice::{make_nice, NiceKind, NiceNode, NiceTreeDecomposition};

use crate::graph::{Graph, VertexSet};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

pub const DEFAULT_TREEWIDTH_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwError {
    #[error("graph has {n} vertices, exact treewidth limit is {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("invalid decomposition: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Bags joined by tree edges (indices into `bags`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; zero for bagless or empty-bag inputs.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// The bag graph is a tree and the bags holding any vertex form a
    /// connected subtree. Coverage of a particular graph is not checked.
    pub fn check_shape(&self) -> Result<(), TwError> {
        let k = self.bags.len();
        if k == 0 {
            return Err(TwError::Invalid("no bags".into()));
        }
        if self.tree.len() != k - 1 {
            return Err(TwError::Invalid(format!(
                "{k} bags need {} tree edges",
                k - 1
            )));
        }
        if self.tree.iter().any(|&(a, b)| a >= k || b >= k || a == b) {
            return Err(TwError::Invalid("tree edge out of range".into()));
        }
        let adj = self.tree_adjacency();
        if reach(&adj, 0, |_| true).len() != k {
            return Err(TwError::Invalid("bag graph is not a tree".into()));
        }
        let all = self
            .bags
            .iter()
            .fold(VertexSet::empty(), |a, &b| a.union(b));
        for v in all.iter() {
            let holding: Vec<usize> = (0..k).filter(|&i| self.bags[i].contains(v)).collect();
            let got = reach(&adj, holding[0], |i| self.bags[i].contains(v)).len();
            if got != holding.len() {
                return Err(TwError::Invalid(format!(
                    "bags holding {v} are not connected"
                )));
            }
        }
        Ok(())
    }

    pub fn check(&self, g: &Graph) -> Result<(), TwError> {
        self.check_shape()?;
        let all = self
            .bags
            .iter()
            .fold(VertexSet::empty(), |a, &b| a.union(b));
        if !g.vertices().is_subset(all) {
            return Err(TwError::Invalid("some vertex is in no bag".into()));
        }
        if !all.is_subset(g.vertices()) {
            return Err(TwError::Invalid(
                "bag holds a vertex outside the graph".into(),
            ));
        }
        for &(u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
                return Err(TwError::Invalid(format!("edge {u}-{v} is in no bag")));
            }
        }
        Ok(())
    }

    /// Reads `bag <id>: v v v` and `edge <id> <id>` lines; blank lines and
    /// `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, TwError> {
        let mut bags: Vec<Option<VertexSet>> = Vec::new();
        let mut tree = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| TwError::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let num = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| err(&format!("bad number {s:?}")))
            };
            if let Some(rest) = line.strip_prefix("bag ") {
                let (id, vs) = rest.split_once(':').ok_or_else(|| err("missing ':'"))?;
                let id = num(id)?;
                let mut set = VertexSet::empty();
                for tok in vs.split_whitespace() {
                    let v = num(tok)?;
                    if v >= VertexSet::CAPACITY {
                        return Err(err("vertex id too large"));
                    }
                    set.insert(v);
                }
                if bags.len() <= id {
                    bags.resize(id + 1, None);
                }
                if bags[id].replace(set).is_some() {
                    return Err(err("bag defined twice"));
                }
            } else if let Some(rest) = line.strip_prefix("edge ") {
                let ids: Vec<&str> = rest.split_whitespace().collect();
                if ids.len() != 2 {
                    return Err(err("edge needs two bag ids"));
                }
                tree.push((num(ids[0])?, num(ids[1])?));
            } else {
                return Err(err("expected 'bag' or 'edge'"));
            }
        }
        let bags = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or(TwError::Invalid(format!("bag {i} missing"))))
            .collect::<Result<_, _>>()?;
        Ok(TreeDecomposition { bags, tree })
    }
}

impl fmt::Display for TreeDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.bags.iter().enumerate() {
            write!(f, "bag {i}:")?;
            for v in b.iter() {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        for (a, b) in &self.tree {
            writeln!(f, "edge {a} {b}")?;
        }
        Ok(())
    }
}

fn reach(adj: &[Vec<usize>], s: usize, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    seen[s] = true;
    let mut out = vec![s];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for &y in &adj[x] {
            if !seen[y] && keep(y) {
                seen[y] = true;
                out.push(y);
            }
        }
    }
    out
}

pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> bool {
    td.check(g).is_ok()
}

/// Elimination graph state: adjacency among the vertices still present.
#[derive(Clone)]
struct Elim {
    adj: Vec<u64>,
}

impl Elim {
    fn new(g: &Graph) -> Self {
        Elim {
            adj: (0..g.n()).map(|v| g.neighbors(v).0).collect(),
        }
    }

    fn eliminate(&mut self, v: usize, alive: u64) {
        let nb = self.adj[v] & alive;
        for u in bits(nb) {
            self.adj[u] |= nb & !(1 << u);
            self.adj[u] &= !(1 << v);
        }
    }

    fn fill_in(&self, v: usize, alive: u64) -> usize {
        let nb = self.adj[v] & alive;
        bits(nb)
            .map(|u| (nb & !self.adj[u] & !(1 << u)).count_ones() as usize)
            .sum::<usize>()
            / 2
    }
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            i
        })
    })
}

/// Decomposition whose bags are each vertex with its later neighbours in
/// the filled graph of `order`.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![VertexSet::empty()],
            tree: Vec::new(),
        };
    }
    let mut e = Elim::new(g);
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut alive = g.vertices().0;
    let mut bags = Vec::with_capacity(n);
    for &v in order {
        bags.push(VertexSet((e.adj[v] & alive) | (1 << v)));
        e.eliminate(v, alive);
        alive &= !(1 << v);
    }
    let mut tree = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later = bags[i].without(v);
        match later.iter().min_by_key(|&u| rank[u]) {
            Some(u) => tree.push((i, rank[u])),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        tree.push((w[0], w[1]));
    }
    TreeDecomposition { bags, tree }
}

/// Min-fill elimination order, ties broken by smaller degree then id.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let mut e = Elim::new(g);
    let mut alive = g.vertices().0;
    let mut order = Vec::with_capacity(g.n());
    while alive != 0 {
        let v = bits(alive)
            .min_by_key(|&v| (e.fill_in(v, alive), (e.adj[v] & alive).count_ones(), v))
            .expect("alive is non-empty");
        e.eliminate(v, alive);
        alive &= !(1 << v);
        order.push(v);
    }
    order
}

pub fn treewidth_upperbound(g: &Graph) -> (usize, TreeDecomposition) {
    let td = decomposition_from_order(g, &min_fill_order(g));
    (td.width(), td)
}

pub fn treewidth_exact(g: &Graph) -> Result<(usize, TreeDecomposition), TwError> {
    treewidth_exact_with_limit(g, DEFAULT_TREEWIDTH_MAX_N)
}

/// Branch-and-bound over elimination orders. The elimination graph after
/// removing a set depends only on that set, so each remaining set is
/// expanded at most once per width-so-far improvement.
pub fn treewidth_exact_with_limit(
    g: &Graph,
    max_n: usize,
) -> Result<(usize, TreeDecomposition), TwError> {
    if g.n() > max_n {
        return Err(TwError::SizeLimit {
            n: g.n(),
            limit: max_n,
        });
    }
    let seed = min_fill_order(g);
    let seed_width = decomposition_from_order(g, &seed).width();
    let mut s = Search {
        best: seed_width,
        best_order: seed,
        memo: HashMap::new(),
        order: Vec::with_capacity(g.n()),
    };
    if seed_width > lower_bound(&Elim::new(g), g.vertices().0) {
        s.run(&Elim::new(g), g.vertices().0, 0);
    }
    let td = decomposition_from_order(g, &s.best_order);
    debug_assert_eq!(td.width(), s.best);
    Ok((s.best, td))
}

/// Minimum-degree lower bound maximised over a greedy min-degree deletion
/// sequence (degeneracy of the elimination graph).
fn lower_bound(e: &Elim, alive: u64) -> usize {
    let mut alive = alive;
    let mut lb = 0;
    while alive != 0 {
        let (v, d) = bits(alive)
            .map(|v| (v, (e.adj[v] & alive).count_ones() as usize))
            .min_by_key(|&(_, d)| d)
            .expect("non-empty");
        lb = lb.max(d);
        alive &= !(1 << v);
    }
    lb
}

struct Search {
    best: usize,
    best_order: Vec<usize>,
    memo: HashMap<u64, usize>,
    order: Vec<usize>,
}

impl Search {
    fn run(&mut self, e: &Elim, alive: u64, so_far: usize) {
        if alive == 0 {
            if so_far < self.best {
                self.best = so_far;
                self.best_order = self.order.clone();
            }
            return;
        }
        if let Some(&w) = self.memo.get(&alive) {
            if w <= so_far {
                return;
            }
        }
        self.memo.insert(alive, so_far);
        let remaining = alive.count_ones() as usize;
        // Everything left fits in one bag.
        if remaining - 1 <= so_far {
            self.finish(alive, so_far);
            return;
        }
        if so_far.max(lower_bound(e, alive)) >= self.best {
            return;
        }
        // A simplicial vertex can always be eliminated first.
        let simplicial = bits(alive).find(|&v| e.fill_in(v, alive) == 0);
        let candidates: Vec<usize> = match simplicial {
            Some(v) => vec![v],
            None => bits(alive).collect(),
        };
        for v in candidates {
            let d = (e.adj[v] & alive).count_ones() as usize;
            let w = so_far.max(d);
            if w >= self.best {
                continue;
            }
            let mut next = e.clone();
            next.eliminate(v, alive);
            self.order.push(v);
            self.run(&next, alive & !(1 << v), w);
            self.order.pop();
        }
    }

    fn finish(&mut self, alive: u64, so_far: usize) {
        if so_far < self.best {
            self.best = so_far;
            self.best_order = self.order.iter().copied().chain(bits(alive)).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn exact_examples() {
        assert_eq!(treewidth_exact(&named::path(6)).unwrap().0, 1);
        assert_eq!(treewidth_exact(&named::star(4)).unwrap().0, 1);
        assert_eq!(treewidth_exact(&named::complete(4)).unwrap().0, 3);
        assert_eq!(treewidth_exact(&named::cycle(5)).unwrap().0, 2);
        assert_eq!(treewidth_exact(&named::cube()).unwrap().0, 3);
        assert_eq!(treewidth_exact(&Graph::new(3).unwrap()).unwrap().0, 0);
        assert!(treewidth_exact(&Graph::new(21).unwrap()).is_err());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(treewidth_upperbound(&named::complete(4)).0, 3);
        assert_eq!(treewidth_upperbound(&named::path(5)).0, 1);
        assert!(treewidth_upperbound(&named::cycle(5)).0 >= 2);
    }

    #[test]
    fn validation_examples() {
        let k3 = named::complete(3);
        let one = TreeDecomposition {
            bags: vec![VertexSet::full(3)],
            tree: vec![],
        };
        assert!(validate_decomposition(&k3, &one));
        let two = TreeDecomposition {
            bags: vec![[0, 1].into_iter().collect(), [1, 2].into_iter().collect()],
            tree: vec![(0, 1)],
        };
        assert!(!validate_decomposition(&k3, &two));
        assert!(validate_decomposition(&named::path(3), &two));
    }

    #[test]
    fn text_round_trip() {
        let (_, td) = treewidth_exact(&named::prism()).unwrap();
        let back = TreeDecomposition::parse(&td.to_string()).unwrap();
        assert_eq!(back, td);
        assert!(TreeDecomposition::parse("bag 0: 1 x").is_err());
    }
}
