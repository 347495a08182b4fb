//! Minor containment by exhaustive branch-set search.
//!
//! `h` is a minor of `g` iff `g` has pairwise disjoint connected vertex sets
//! `U_0..U_{k-1}`, one per vertex of `h`, with an edge of `g` between `U_i` and
//! `U_j` for every edge `ij` of `h`. For connected `h` every such model lives
//! in one component of `g` and can be grown until it covers that component,
//! so the search only enumerates partitions of a component into exactly
//! `|V(h)|` connected parts.

use super::named;
use super::Graph;

/// Working adjacency over original vertex ids.
#[derive(Clone)]
struct Work {
    adj: Vec<u64>,
    alive: u64,
}

impl Work {
    fn from_graph(g: &Graph) -> Self {
        Work {
            adj: (0..g.n()).map(|v| g.neighbors(v).0).collect(),
            alive: g.vertices().0,
        }
    }

    fn degree(&self, v: usize) -> u32 {
        (self.adj[v] & self.alive).count_ones()
    }

    fn delete(&mut self, v: usize) {
        self.alive &= !(1 << v);
        let nb = self.adj[v];
        for u in iter_bits(nb) {
            self.adj[u] &= !(1 << v);
        }
        self.adj[v] = 0;
    }

    /// Repeatedly drops vertices of degree below `min_keep`, and suppresses
    /// degree-2 vertices when `suppress` is set.
    fn reduce(&mut self, min_keep: u32, suppress: bool) {
        loop {
            let mut changed = false;
            for v in iter_bits(self.alive) {
                let d = self.degree(v);
                if d < min_keep {
                    self.delete(v);
                    changed = true;
                } else if suppress && d == 2 {
                    let nb: Vec<usize> = iter_bits(self.adj[v] & self.alive).collect();
                    let (a, b) = (nb[0], nb[1]);
                    self.delete(v);
                    self.adj[a] |= 1 << b;
                    self.adj[b] |= 1 << a;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn component(&self, s: usize, within: u64) -> u64 {
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in iter_bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & within & !seen;
            seen |= frontier;
        }
        seen
    }

    fn edge_count(&self, within: u64) -> u32 {
        iter_bits(within)
            .map(|v| (self.adj[v] & within).count_ones())
            .sum::<u32>()
            / 2
    }
}

fn iter_bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

#[inline]
fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

/// Distinct edge masks of `h` under every relabelling of its vertices.
fn images(h: &Graph) -> Vec<u64> {
    let k = h.n();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    loop {
        let mut mask = 0u64;
        for &(u, v) in h.edges() {
            mask |= 1 << pair_index(perm[u], perm[v]);
        }
        out.push(mask);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Calls `visit` on every connected subset of `allowed` that contains `v`,
/// stopping early once `visit` returns true.
fn connected_sets(
    adj: &[u64],
    allowed: u64,
    set: u64,
    ext: u64,
    excl: u64,
    visit: &mut dyn FnMut(u64) -> bool,
) -> bool {
    if visit(set) {
        return true;
    }
    let mut ext = ext;
    let mut excl = excl;
    while ext != 0 {
        let w = ext.trailing_zeros() as usize;
        ext &= ext - 1;
        let fresh = adj[w] & allowed & !set & !excl & !ext & !(1 << w);
        if connected_sets(adj, allowed, set | (1 << w), ext | fresh, excl, visit) {
            return true;
        }
        excl |= 1 << w;
    }
    false
}

struct PartitionSearch<'a> {
    adj: &'a [u64],
    parts: usize,
    images: &'a [u64],
    chosen: Vec<u64>,
}

impl PartitionSearch<'_> {
    fn quotient_ok(&self) -> bool {
        let mut q = 0u64;
        for i in 0..self.chosen.len() {
            let mut nb = 0u64;
            for v in iter_bits(self.chosen[i]) {
                nb |= self.adj[v];
            }
            for j in i + 1..self.chosen.len() {
                if nb & self.chosen[j] != 0 {
                    q |= 1 << pair_index(i, j);
                }
            }
        }
        self.images.iter().any(|&img| img & q == img)
    }

    fn run(&mut self, remaining: u64) -> bool {
        if remaining == 0 {
            return self.chosen.len() == self.parts && self.quotient_ok();
        }
        let need = self.parts - self.chosen.len();
        if need == 0 || (remaining.count_ones() as usize) < need {
            return false;
        }
        let v = remaining.trailing_zeros() as usize;
        let adj = self.adj;
        let start = 1u64 << v;
        let ext = adj[v] & remaining & !start;
        let mut found = false;
        // The last part must take everything that is left.
        if need == 1 {
            self.chosen.push(remaining);
            let connected = {
                let mut seen = start;
                let mut frontier = seen;
                while frontier != 0 {
                    let mut next = 0;
                    for x in iter_bits(frontier) {
                        next |= adj[x];
                    }
                    frontier = next & remaining & !seen;
                    seen |= frontier;
                }
                seen == remaining
            };
            found = connected && self.quotient_ok();
            self.chosen.pop();
            return found;
        }
        let mut sets = Vec::new();
        connected_sets(adj, remaining, start, ext, 0, &mut |s| {
            sets.push(s);
            false
        });
        for s in sets {
            let rest = remaining & !s;
            if (rest.count_ones() as usize) < need - 1 {
                continue;
            }
            self.chosen.push(s);
            found = self.run(rest);
            self.chosen.pop();
            if found {
                break;
            }
        }
        found
    }
}

/// Fallback for disconnected `h`: label every vertex of `g` with a branch
/// set or "deleted" and check the model directly.
fn brute_force_labels(g: &Graph, h: &Graph) -> bool {
    let k = h.n();
    let n = g.n();
    let mut labels = vec![k; n];
    fn rec(g: &Graph, h: &Graph, labels: &mut Vec<usize>, v: usize) -> bool {
        let k = h.n();
        if v == g.n() {
            let sets: Vec<_> = (0..k)
                .map(|i| {
                    (0..g.n())
                        .filter(|&x| labels[x] == i)
                        .collect::<super::VertexSet>()
                })
                .collect();
            if sets.iter().any(|s| s.is_empty() || !g.is_connected_set(*s)) {
                return false;
            }
            return h
                .edges()
                .iter()
                .all(|&(a, b)| sets[a].iter().any(|x| !g.neighbors(x).is_disjoint(sets[b])));
        }
        for l in 0..=k {
            labels[v] = l;
            if rec(g, h, labels, v + 1) {
                return true;
            }
        }
        false
    }
    rec(g, h, &mut labels, 0)
}

/// Whether `h` is a minor of `g`.
pub fn is_minor(g: &Graph, h: &Graph) -> bool {
    let k = h.n();
    if k == 0 {
        return true;
    }
    if k > g.n() || h.m() > g.m() {
        return false;
    }
    if !h.is_connected() {
        return brute_force_labels(g, h);
    }
    if k == 1 {
        return true;
    }
    let min_deg = (0..k).map(|v| h.degree(v)).min().unwrap_or(0) as u32;
    let mut w = Work::from_graph(g);
    w.reduce(min_deg.min(2), min_deg >= 3);
    let imgs = images(h);
    let mut left = w.alive;
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        let comp = w.component(s, w.alive);
        left &= !comp;
        if (comp.count_ones() as usize) < k || (w.edge_count(comp) as usize) < h.m() {
            continue;
        }
        let mut search = PartitionSearch {
            adj: &w.adj,
            parts: k,
            images: &imgs,
            chosen: Vec::with_capacity(k),
        };
        if search.run(comp) {
            return true;
        }
    }
    false
}

/// Planar iff neither `K5` nor `K3,3` is a minor.
pub fn is_planar(g: &Graph) -> bool {
    if g.n() >= 3 && g.m() > 3 * g.n() - 6 {
        return false;
    }
    !is_minor(g, &named::complete(5)) && !is_minor(g, &named::complete_bipartite(3, 3))
}

/// Outerplanar iff neither `K4` nor `K2,3` is a minor.
pub fn is_outerplanar(g: &Graph) -> bool {
    if g.n() >= 2 && g.m() > 2 * g.n() - 3 {
        return false;
    }
    !is_minor(g, &named::complete(4)) && !is_minor(g, &named::complete_bipartite(2, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn examples() {
        assert!(is_minor(&complete(4), &complete(3)));
        assert!(!is_minor(&star(3), &complete(3)));
        assert!(is_minor(&cycle(4), &complete(3)));
        assert!(!is_planar(&complete(5)));
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete_bipartite(3, 3)));
        assert!(is_outerplanar(&cycle(5)));
        assert!(!is_outerplanar(&complete(4)));
        assert!(!is_outerplanar(&complete_bipartite(2, 3)));
        assert!(is_planar(&cube()));
        assert!(!is_outerplanar(&prism()));
    }

    #[test]
    fn petersen_is_nonplanar() {
        let mut g = Graph::new(10).unwrap();
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(i, i + 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        assert!(!is_planar(&g));
        assert!(is_minor(&g, &complete(5)));
    }

    #[test]
    fn matches_label_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let targets = [
            complete(3),
            complete(4),
            complete_bipartite(2, 3),
            cycle(4),
            path(3),
        ];
        for _ in 0..150 {
            let n = rng.gen_range(3..=6);
            let mut g = Graph::new(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            for h in &targets {
                assert_eq!(is_minor(&g, h), brute_force_labels(&g, h), "{g:?} vs {h:?}");
            }
        }
    }

    #[test]
    fn disconnected_target() {
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(is_minor(&path(4), &two_edges));
        assert!(!is_minor(&star(3), &two_edges));
    }
}
