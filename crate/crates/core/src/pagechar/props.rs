//! Predicates shared by the two-page characterizations and by the model
//! checker's built-in shortcuts.

use crate::graph::{cycle_order, simple_cycles_within, EdgeSet, Graph, VertexSet};
use crate::mso::book::PathRule;

/// Calls `accept` on decompositions of `xc` into edge-disjoint simple
/// cycles until it returns true. Returns whether some call did.
pub fn any_cycle_decomposition(
    g: &Graph,
    xc: EdgeSet,
    accept: &mut dyn FnMut(&[EdgeSet]) -> bool,
) -> bool {
    fn go(
        g: &Graph,
        rest: EdgeSet,
        acc: &mut Vec<EdgeSet>,
        accept: &mut dyn FnMut(&[EdgeSet]) -> bool,
    ) -> bool {
        let Some(e) = rest.first() else {
            return accept(acc);
        };
        for c in simple_cycles_within(g, rest) {
            if c.contains(e) {
                acc.push(c);
                if go(g, rest.difference(c), acc, accept) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    go(g, xc, &mut Vec::new(), accept)
}

/// Whether the pairs `{a, b}` and `{c, d}` alternate around `order`.
pub fn in_crossing_position(order: &[usize], a: usize, b: usize, c: usize, d: usize) -> bool {
    let pos = |x: usize| order.iter().position(|&y| y == x);
    match (pos(a), pos(b), pos(c), pos(d)) {
        (Some(a), Some(b), Some(c), Some(d)) => {
            let (lo, hi) = (a.min(b), a.max(b));
            let inside = |x: usize| lo < x && x < hi;
            a != b
                && c != d
                && ![a, b].contains(&c)
                && ![a, b].contains(&d)
                && inside(c) != inside(d)
        }
        _ => false,
    }
}

/// Whether two vertex-disjoint paths join pairs in crossing position on
/// the cycle `c`, with interiors off the cycle. `rule` says which paths
/// through `xi` edges are admissible.
pub fn crossing_paths_exist(g: &Graph, c: EdgeSet, xi: EdgeSet, rule: PathRule) -> bool {
    let Ok(order) = cycle_order(g, c) else {
        return false;
    };
    let on_c = g.endpoints(c);
    let off = g.vertices().difference(on_c);
    let usable = match rule {
        PathRule::AvoidChords => g.all_edges().difference(xi),
        PathRule::NotSingleChord => g.all_edges(),
    };
    let adj: Vec<VertexSet> = (0..g.n())
        .map(|v| {
            g.incident(v)
                .intersection(usable)
                .iter()
                .fold(VertexSet::empty(), |acc, e| {
                    let (x, y) = g.edge(e);
                    acc.with(x ^ y ^ v)
                })
        })
        .collect();
    let direct = |u: usize, v: usize| {
        g.edge_id(u, v).is_some_and(|e| {
            usable.contains(e) && !(rule == PathRule::NotSingleChord && xi.contains(e))
        })
    };
    // Is there a path u ~> v through `free` (off-cycle) vertices only?
    let linked = |u: usize, v: usize, free: VertexSet| {
        if direct(u, v) {
            return true;
        }
        let mut seen = adj[u].intersection(free);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for x in frontier.iter() {
                next = next.union(adj[x].intersection(free));
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen.iter().any(|x| adj[x].contains(v))
    };
    // Interiors of every first path from a to b.
    fn interiors(
        adj: &[VertexSet],
        off: VertexSet,
        at: usize,
        b: usize,
        used: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        for x in adj[at].intersection(off).difference(used).iter() {
            let inner = used.with(x);
            if adj[x].contains(b) {
                out.push(inner);
            }
            interiors(adj, off, x, b, inner, out);
        }
    }
    let len = order.len();
    for i in 0..len {
        for j in i + 2..len {
            let (a, b) = (order[i], order[j]);
            let mut firsts = Vec::new();
            if direct(a, b) {
                firsts.push(VertexSet::empty());
            }
            interiors(&adj, off, a, b, VertexSet::empty(), &mut firsts);
            firsts.sort_by_key(|s| s.0);
            firsts.dedup();
            for inner in firsts {
                let free = off.difference(inner);
                let one_side = &order[i + 1..j];
                let other_side: Vec<usize> =
                    order[j + 1..].iter().chain(&order[..i]).copied().collect();
                if one_side
                    .iter()
                    .any(|&c| other_side.iter().any(|&d| linked(c, d, free)))
                {
                    return true;
                }
            }
        }
    }
    false
}

/// The least edge set containing `e` that holds every edge at each vertex
/// of `through` it touches.
pub fn piece_closure(g: &Graph, e: usize, through: VertexSet) -> EdgeSet {
    let mut piece = EdgeSet::singleton(e);
    loop {
        let hubs = g.endpoints(piece).intersection(through);
        let grown = hubs.iter().fold(piece, |acc, v| acc.union(g.incident(v)));
        if grown == piece {
            return piece;
        }
        piece = grown;
    }
}

/// Whether `piece` lies on the cycle `c` through `through` vertices: every
/// vertex it touches is crossing or on `c`, and at least two are on `c`.
pub(crate) fn piece_fits(g: &Graph, piece: EdgeSet, c: EdgeSet, through: VertexSet) -> bool {
    let touched = g.endpoints(piece);
    let on_c = g.endpoints(c);
    touched.is_subset(on_c.union(through)) && touched.intersection(on_c).len() >= 2
}

/// Whether two pieces have endpoint pairs in crossing position on `c`.
pub(crate) fn pieces_cross(g: &Graph, p: EdgeSet, q: EdgeSet, c: EdgeSet) -> bool {
    let Ok(order) = cycle_order(g, c) else {
        return false;
    };
    let on_c = g.endpoints(c);
    let ps: Vec<usize> = g.endpoints(p).intersection(on_c).iter().collect();
    let qs: Vec<usize> = g.endpoints(q).intersection(on_c).iter().collect();
    ps.iter().any(|&a| {
        ps.iter().any(|&b| {
            qs.iter()
                .any(|&x| qs.iter().any(|&y| in_crossing_position(&order, a, b, x, y)))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn crossing_position_examples() {
        let order = [0, 1, 2, 3];
        assert!(in_crossing_position(&order, 0, 2, 1, 3));
        assert!(!in_crossing_position(&order, 0, 1, 2, 3));
        assert!(!in_crossing_position(&order, 0, 2, 2, 3));
    }

    #[test]
    fn chords_of_a_square() {
        let k4 = named::complete(4);
        let rim = EdgeSet::from_iter(
            [(0, 1), (1, 2), (2, 3), (0, 3)]
                .iter()
                .map(|&(u, v)| k4.edge_id(u, v).unwrap()),
        );
        let chords = k4.all_edges().difference(rim);
        // Both diagonals are single chord edges.
        assert!(!crossing_paths_exist(
            &k4,
            rim,
            chords,
            PathRule::NotSingleChord
        ));
        assert!(crossing_paths_exist(
            &k4,
            rim,
            EdgeSet::empty(),
            PathRule::NotSingleChord
        ));
        assert!(!crossing_paths_exist(
            &k4,
            rim,
            chords,
            PathRule::AvoidChords
        ));
    }

    #[test]
    fn decompositions_of_two_triangles() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let mut count = 0;
        any_cycle_decomposition(&g, g.all_edges(), &mut |d| {
            assert_eq!(d.len(), 2);
            count += 1;
            false
        });
        assert_eq!(count, 1);
        let k4 = named::complete(4);
        assert!(!any_cycle_decomposition(&k4, k4.all_edges(), &mut |_| true));
    }

    #[test]
    fn closure_through_crossings() {
        let k4 = named::complete(4);
        let d = crate::bookdraw::CrossingDiagram {
            points: 4,
            segments: vec![(0, 2), (1, 3)],
            colors: None,
        };
        let p = super::super::planarize(&k4, &d, &[0, 1, 2, 3], &[1, 4]).unwrap();
        let first = p.paths[1][0];
        assert_eq!(piece_closure(&p.graph, first, p.crossing).len(), 4);
        let rim = p.paths[0][0];
        assert_eq!(piece_closure(&p.graph, rim, p.crossing).len(), 1);
    }
}
