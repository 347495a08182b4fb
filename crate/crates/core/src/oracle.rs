//! Brute-force reference implementations for small inputs. They favour
//! obviousness over speed and are used to cross-check the real solvers.

use crate::bookdraw::BookDrawing;
use crate::graph::Graph;
use std::collections::BTreeSet;

/// Whether chords `(a, b)` and `(c, d)` cross with vertices at `pos`.
fn cross(pos: &[usize], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    let inside = |x: usize| lo < pos[x] && pos[x] < hi;
    inside(c) != inside(d)
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// Every ordering of `0..n` that starts with 0.
pub fn rooted_orders(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        out.push(std::iter::once(0).chain(rest.iter().copied()).collect());
        if !crate::graph::next_permutation(&mut rest) {
            return out;
        }
    }
}

/// Bitmask of the edges each edge crosses under a spine order.
fn conflicts(g: &Graph, order: &[usize]) -> Vec<u128> {
    let pos = positions(order);
    let es = g.edges();
    (0..es.len())
        .map(|i| {
            (0..es.len())
                .filter(|&j| cross(&pos, es[i], es[j]))
                .fold(0u128, |m, j| m | 1 << j)
        })
        .collect()
}

/// 1-page crossing number by trying every cyclic order.
pub fn cr1(g: &Graph) -> usize {
    rooted_orders(g.n())
        .iter()
        .map(|o| {
            conflicts(g, o)
                .iter()
                .map(|c| c.count_ones() as usize)
                .sum::<usize>()
                / 2
        })
        .min()
        .unwrap_or(0)
}

/// 2-page crossing number by trying every order and page assignment.
pub fn cr2(g: &Graph) -> usize {
    let m = g.m();
    let full: u128 = if m == 0 { 0 } else { u128::MAX >> (128 - m) };
    let mut best = usize::MAX;
    for o in rooted_orders(g.n()) {
        let c = conflicts(g, &o);
        // Swapping the pages changes nothing, so edge 0 stays on page 0.
        for mask in 0..(1u128 << m.saturating_sub(1)) {
            let a = (mask << 1) & full;
            let b = full & !a;
            let cr: usize = c
                .iter()
                .enumerate()
                .map(|(e, ce)| (ce & if a >> e & 1 == 1 { a } else { b }).count_ones() as usize)
                .sum();
            best = best.min(cr / 2);
        }
        if best == 0 {
            break;
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// Same-page crossings of a drawing, counted pair by pair.
pub fn drawing_crossings(g: &Graph, d: &BookDrawing) -> usize {
    let pos = positions(&d.spine);
    let es = g.edges();
    (0..es.len())
        .flat_map(|i| (i + 1..es.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| d.pages[i] == d.pages[j] && cross(&pos, es[i], es[j]))
        .count()
}

pub fn hamiltonian(g: &Graph) -> bool {
    g.n() >= 3
        && rooted_orders(g.n())
            .iter()
            .any(|o| (0..o.len()).all(|i| g.has_edge(o[i], o[(i + 1) % o.len()])))
}

pub fn colorable(g: &Graph, k: usize) -> bool {
    let n = g.n() as u32;
    (0..(k as u64).pow(n)).any(|code| {
        let color = |v: usize| (code / (k as u64).pow(v as u32)) % k as u64;
        g.edges().iter().all(|&(u, v)| color(u) != color(v))
    })
}

pub fn connected(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in g.edges() {
            if seen[u] != seen[v] {
                seen[u] = true;
                seen[v] = true;
                changed = true;
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every clique of `g` with `size` vertices, as sorted vertex lists.
pub fn cliques(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    (0u64..1 << g.n())
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..g.n()).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|vs| {
            vs.iter()
                .enumerate()
                .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
        })
        .collect()
}

type Triple = (usize, usize, u8);

/// Number of crossing diagrams with exactly `k` crossings on `pages`
/// pages, up to rotation: every chord set on up to `4k` points and every
/// colouring, filtered and deduplicated directly.
pub fn diagram_count(k: usize, pages: u8) -> usize {
    if k == 0 {
        return 1;
    }
    let mut seen: BTreeSet<(usize, Vec<Triple>)> = BTreeSet::new();
    for p in 4..=4 * k {
        let chords: Vec<(usize, usize)> = (0..p)
            .flat_map(|a| (a + 1..p).map(move |b| (a, b)))
            .collect();
        let ident: Vec<usize> = (0..p).collect();
        for mask in 0u64..1 << chords.len() {
            let r = mask.count_ones() as usize;
            if r < 2 || r > 2 * k {
                continue;
            }
            let segs: Vec<(usize, usize)> = (0..chords.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| chords[i])
                .collect();
            let mut used = vec![false; p];
            for &(a, b) in &segs {
                used[a] = true;
                used[b] = true;
            }
            if used.contains(&false) {
                continue;
            }
            let colourings = if pages == 2 { 1u32 << r } else { 1 };
            for col in 0..colourings {
                let c = |i: usize| (col >> i & 1) as u8;
                let crosses = |i: usize, j: usize| c(i) == c(j) && cross(&ident, segs[i], segs[j]);
                let count = (0..r)
                    .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
                    .filter(|&(i, j)| crosses(i, j))
                    .count();
                if count != k || (0..r).any(|i| !(0..r).any(|j| j != i && crosses(i, j))) {
                    continue;
                }
                let canon = (0..p)
                    .map(|rot| {
                        let mut t: Vec<Triple> = segs
                            .iter()
                            .enumerate()
                            .map(|(i, &(a, b))| {
                                let (x, y) = ((a + rot) % p, (b + rot) % p);
                                (x.min(y), x.max(y), c(i))
                            })
                            .collect();
                        t.sort();
                        t
                    })
                    .min()
                    .expect("p >= 4");
                seen.insert((p, canon));
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn reference_values() {
        assert_eq!(rooted_orders(4).len(), 6);
        assert_eq!(cr1(&named::complete(4)), 1);
        assert_eq!(cr1(&named::complete(5)), 5);
        assert_eq!(cr2(&named::complete(5)), 1);
        assert_eq!(cr2(&named::complete(4)), 0);
        assert!(hamiltonian(&named::cycle(5)) && !hamiltonian(&named::star(3)));
        assert!(colorable(&named::cycle(4), 2) && !colorable(&named::cycle(5), 2));
        assert!(connected(&named::path(4)) && !connected(&Graph::new(2).unwrap()));
        assert_eq!(cliques(&named::complete(4), 3).len(), 4);
        assert_eq!(diagram_count(1, 1), 1);
        assert_eq!(diagram_count(1, 2), 2);
    }
}
