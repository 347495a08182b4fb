//! Small-graph corpora: every graph on `n` vertices up to isomorphism, and
//! seeded random graphs.

use crate::graph::{next_permutation, Graph};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashSet;

/// Isomorphism-invariant code: the lexicographically smallest upper-triangle
/// adjacency word over all relabellings that respect a degree-based vertex
/// ordering. Supports `n <= 11`.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical_code supports at most 11 vertices");
    // Invariant per vertex: degree, then the sorted multiset of neighbour degrees.
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|u| g.degree(u)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    // Cells of equal invariant, each permuted independently.
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut cell_perms: Vec<Vec<usize>> = cells.iter().map(|c| (0..c.len()).collect()).collect();
    let mut pos = vec![0usize; n];
    loop {
        let mut slot = 0;
        for (c, p) in cells.iter().zip(&cell_perms) {
            for &i in p {
                pos[c[i]] = slot;
                slot += 1;
            }
        }
        let mut code = 0u64;
        for &(u, v) in g.edges() {
            let (a, b) = if pos[u] < pos[v] {
                (pos[u], pos[v])
            } else {
                (pos[v], pos[u])
            };
            code |= 1 << (b * (b - 1) / 2 + a);
        }
        best = best.min(code);
        // Odometer over the per-cell permutations.
        let mut k = 0;
        loop {
            if k == cell_perms.len() {
                return best;
            }
            if next_permutation(&mut cell_perms[k]) {
                break;
            }
            cell_perms[k].sort_unstable();
            k += 1;
        }
    }
}

/// Every graph on exactly `n` vertices, one per isomorphism class, in a
/// deterministic order (by edge count, then canonical code).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "exhaustive corpus limited to n <= 8");
    if n == 0 {
        return vec![Graph::new(0).unwrap()];
    }
    let mut level = vec![Graph::new(1).unwrap()];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for nb in 0u64..(1 << (size - 1)) {
                let mut h = Graph::new(size).unwrap();
                for &(u, v) in g.edges() {
                    h.add_edge(u, v).unwrap();
                }
                for u in 0..size - 1 {
                    if nb >> u & 1 == 1 {
                        h.add_edge(u, size - 1).unwrap();
                    }
                }
                let code = canonical_code(&h);
                if seen.insert(code) {
                    next.push((h.m(), code, h));
                }
            }
        }
        next.sort_by_key(|(m, code, _)| (*m, *code));
        level = next.into_iter().map(|t| t.2).collect();
    }
    level
}

/// Connected graphs on exactly `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n)
        .into_iter()
        .filter(|g| g.is_connected())
        .collect()
}

/// All graphs with `1 <= n <= max_n` vertices.
pub fn all_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(all_graphs).collect()
}

pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random graph of treewidth at most `k`: a random `k`-tree on `n` vertices
/// with each edge kept with probability `keep`.
pub fn random_partial_ktree<R: Rng>(rng: &mut R, n: usize, k: usize, keep: f64) -> Graph {
    let mut edges = Vec::new();
    let base = n.min(k + 1);
    for u in 0..base {
        for v in u + 1..base {
            edges.push((u, v));
        }
    }
    let mut cliques: Vec<Vec<usize>> = vec![(0..base).collect()];
    for v in base..n {
        let host = cliques.choose(rng).expect("seed clique").clone();
        let mut attach = host.clone();
        if attach.len() > k {
            attach.remove(rng.gen_range(0..attach.len()));
        }
        for &u in &attach {
            edges.push((u, v));
        }
        attach.push(v);
        cliques.push(attach);
    }
    let kept: Vec<_> = edges.into_iter().filter(|_| rng.gen_bool(keep)).collect();
    Graph::from_edges(n, &kept).expect("simple by construction")
}

/// Uniformly random vertex relabelling of `g`.
pub fn random_relabel<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.permuted(&perm)
}

#[cfg(test)]
mod tests {
    #[test]
    fn partial_ktrees_respect_their_width() {
        use crate::treewidth::treewidth_exact;
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..=9);
            let k = rng.gen_range(1..=3);
            let g = random_partial_ktree(&mut rng, n, k, 0.8);
            assert_eq!(g.n(), n);
            assert!(treewidth_exact(&g).unwrap().0 <= k);
        }
    }

    use super::*;
    use rand::SeedableRng;

    #[test]
    fn known_counts() {
        // OEIS A000088 and A001349.
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn code_is_invariant() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 7, 0.4);
            let h = random_relabel(&mut rng, &g);
            assert_eq!(canonical_code(&g), canonical_code(&h));
        }
    }
}
