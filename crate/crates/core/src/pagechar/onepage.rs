//! One-page drawings with few crossings: a crossing skeleton `F` drawn on
//! spine vertices `W`, with the rest of the graph hung outerplanarly in the
//! gaps between consecutive skeleton vertices.

use super::PageError;
use crate::bookdraw::{interleaved, CrossingDiagram};
use crate::graph::{add_ear, identify_vertices, is_outerplanar, EdgeSet, Graph, VertexSet};
use rayon::prelude::*;

pub const MAX_WITNESS_N: usize = 8;
pub const MAX_WITNESS_K: usize = 2;

/// How the gap condition is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// Gaps `0..ℓ` only, adjacency of the gap ends enforced by merging
    /// them, every edge among `W` must be in `F`.
    Literal,
    /// Gaps read cyclically, adjacency enforced by an extra common
    /// neighbour of the ends, no `U_i` touches a skeleton vertex outside
    /// its gap, and edges between cyclically consecutive `W` vertices may
    /// stay out of `F`.
    Corrected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePageWitness {
    pub f: Vec<usize>,
    /// Spine order of the skeleton vertices.
    pub w: Vec<usize>,
    /// `u[i]` hangs between `w[i]` and `w[i + 1]` (cyclically).
    pub u: Vec<VertexSet>,
    /// The crossed chords of `f`, for display; checks ignore it.
    pub diagram: CrossingDiagram,
}

fn crossings_in_order(g: &Graph, w: &[usize], f: &[usize]) -> usize {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in w.iter().enumerate() {
        pos[v] = i;
    }
    let chord = |e: usize| {
        let (a, b) = g.edge(e);
        (pos[a], pos[b])
    };
    let mut count = 0;
    for (i, &e) in f.iter().enumerate() {
        for &h in &f[i + 1..] {
            let ((a, b), (c, d)) = (chord(e), chord(h));
            count += interleaved(a, b, c, d) as usize;
        }
    }
    count
}

fn crossed_diagram(g: &Graph, w: &[usize], f: &[usize]) -> CrossingDiagram {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in w.iter().enumerate() {
        pos[v] = i;
    }
    let chords: Vec<(usize, usize)> = f
        .iter()
        .map(|&e| {
            let (a, b) = g.edge(e);
            (pos[a].min(pos[b]), pos[a].max(pos[b]))
        })
        .collect();
    let crossed: Vec<(usize, usize)> = chords
        .iter()
        .filter(|&&(a, b)| chords.iter().any(|&(c, d)| interleaved(a, b, c, d)))
        .copied()
        .collect();
    let mut used: Vec<usize> = crossed.iter().flat_map(|&(a, b)| [a, b]).collect();
    used.sort_unstable();
    used.dedup();
    let at = |x: usize| used.binary_search(&x).expect("used point");
    CrossingDiagram {
        points: used.len(),
        segments: crossed.iter().map(|&(a, b)| (at(a), at(b))).collect(),
        colors: None,
    }
}

/// Outerplanarity of `G[u ∪ {a, b}]` with `a` and `b` forced adjacent on the
/// outer face, via a new common neighbour or by merging them.
fn gap_ok(g: &Graph, u: VertexSet, a: usize, b: usize, reading: Reading) -> bool {
    let vs = u.with(a).with(b);
    let (h, old) = g.induced_subgraph(vs);
    let la = old.iter().position(|&x| x == a).expect("a kept");
    let lb = old.iter().position(|&x| x == b).expect("b kept");
    let h = match reading {
        Reading::Corrected => add_ear(&h, la, lb),
        Reading::Literal => identify_vertices(&h, la, lb),
    };
    h.is_ok_and(|h| is_outerplanar(&h))
}

fn validate(g: &Graph, w: &OnePageWitness) -> Result<(), PageError> {
    let bad = |m: &str| Err(PageError::Malformed(m.to_string()));
    let mut ws = VertexSet::empty();
    for &v in &w.w {
        if v >= g.n() || ws.contains(v) {
            return bad("W repeats a vertex or names one out of range");
        }
        ws.insert(v);
    }
    let mut fs = EdgeSet::empty();
    for &e in &w.f {
        if e >= g.m() || fs.contains(e) {
            return bad("F repeats an edge or names one out of range");
        }
        fs.insert(e);
    }
    if w.u.len() != w.w.len().max(1) {
        return bad("need one U set per W vertex");
    }
    let mut acc = VertexSet::empty();
    for &u in &w.u {
        if !acc.is_disjoint(u) {
            return bad("U sets overlap");
        }
        acc = acc.union(u);
    }
    if acc != g.vertices().difference(ws) {
        return bad("U sets do not partition V \\ W");
    }
    Ok(())
}

/// Checks a one-page witness under the corrected reading.
pub fn check_lemma5(g: &Graph, w: &OnePageWitness, k: usize) -> Result<bool, PageError> {
    check_lemma5_with(g, w, k, Reading::Corrected)
}

pub fn check_lemma5_with(
    g: &Graph,
    w: &OnePageWitness,
    k: usize,
    reading: Reading,
) -> Result<bool, PageError> {
    validate(g, w)?;
    let ws: VertexSet = w.w.iter().copied().collect();
    let fs: EdgeSet = w.f.iter().copied().collect();
    let len = w.w.len();
    let next = |i: usize| w.w[(i + 1) % len];
    // Endpoints.
    if g.endpoints(fs) != ws {
        return Ok(false);
    }
    // Edges among W.
    let consecutive = |e: usize| {
        let (a, b) = g.edge(e);
        len >= 2 && (0..len).any(|i| (w.w[i], next(i)) == (a, b) || (w.w[i], next(i)) == (b, a))
    };
    let inside = g.induced_edges(ws);
    let missing = inside.difference(fs);
    let p2 = match reading {
        Reading::Literal => missing.is_empty(),
        Reading::Corrected => missing.iter().all(consecutive),
    };
    if !p2 {
        return Ok(false);
    }
    // No edges between different gaps.
    for (i, &ui) in w.u.iter().enumerate() {
        let reach = ui
            .iter()
            .fold(VertexSet::empty(), |acc, v| acc.union(g.neighbors(v)));
        if w.u
            .iter()
            .enumerate()
            .any(|(j, &uj)| j != i && !reach.is_disjoint(uj))
        {
            return Ok(false);
        }
        if reading == Reading::Corrected && len >= 2 {
            let ends = VertexSet::empty().with(w.w[i]).with(next(i));
            if !reach.intersection(ws).is_subset(ends) {
                return Ok(false);
            }
        }
    }
    // Gaps.
    let gaps_ok = match (reading, len) {
        (_, 0) => reading == Reading::Literal || is_outerplanar(&g.induced_subgraph(w.u[0]).0),
        (Reading::Literal, _) => {
            (0..len - 1).all(|i| gap_ok(g, w.u[i], w.w[i], w.w[i + 1], reading))
        }
        (Reading::Corrected, _) => (0..len).all(|i| gap_ok(g, w.u[i], w.w[i], next(i), reading)),
    };
    if !gaps_ok {
        return Ok(false);
    }
    Ok(crossings_in_order(g, &w.w, &w.f) <= k)
}

/// Assigns each component to a gap containing all its skeleton
/// neighbours, keeping every gap outerplanar.
fn assign_components(
    g: &Graph,
    w: &[usize],
    comps: &[(VertexSet, Vec<usize>)],
    u: &mut Vec<VertexSet>,
) -> bool {
    let Some(((comp, options), rest)) = comps.split_first() else {
        return true;
    };
    let len = w.len();
    for &i in options {
        let grown = u[i].union(*comp);
        if gap_ok(g, grown, w[i], w[(i + 1) % len], Reading::Corrected) {
            let before = u[i];
            u[i] = grown;
            if assign_components(g, w, rest, u) {
                return true;
            }
            u[i] = before;
        }
    }
    false
}

fn witness_for(g: &Graph, ws: VertexSet, k: usize) -> Option<OnePageWitness> {
    let f: Vec<usize> = g.induced_edges(ws).iter().collect();
    if ws.iter().any(|v| g.neighbors(v).is_disjoint(ws)) {
        return None;
    }
    let rest = g.vertices().difference(ws);
    let verts: Vec<usize> = ws.iter().collect();
    let mut orders = Vec::new();
    permutations(&verts[1..], &mut |p| {
        if p.len() < 2 || p[0] < p[p.len() - 1] {
            let mut o = vec![verts[0]];
            o.extend_from_slice(p);
            orders.push(o);
        }
    });
    for w in orders {
        if crossings_in_order(g, &w, &f) > k {
            continue;
        }
        let len = w.len();
        let mut comps = Vec::new();
        let mut feasible = true;
        for comp in g.components_within(rest) {
            let touch = comp
                .iter()
                .fold(VertexSet::empty(), |acc, v| acc.union(g.neighbors(v)))
                .intersection(ws);
            let options: Vec<usize> = (0..len)
                .filter(|&i| touch.is_subset(VertexSet::empty().with(w[i]).with(w[(i + 1) % len])))
                .collect();
            if options.is_empty() {
                feasible = false;
                break;
            }
            comps.push((comp, options));
        }
        if !feasible {
            continue;
        }
        let mut u = vec![VertexSet::empty(); len];
        if assign_components(g, &w, &comps, &mut u) {
            let diagram = crossed_diagram(g, &w, &f);
            return Some(OnePageWitness {
                f: f.clone(),
                w,
                u,
                diagram,
            });
        }
    }
    None
}

fn permutations(items: &[usize], visit: &mut dyn FnMut(&[usize])) {
    fn go(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            go(items, k + 1, visit);
            items.swap(k, i);
        }
    }
    let mut v = items.to_vec();
    v.sort_unstable();
    go(&mut v, 0, visit);
}

/// Searches skeleton vertex sets (smallest first), their cyclic orders and
/// the placement of the remaining components. The first witness in that
/// order is returned.
pub fn find_lemma5_witness(g: &Graph, k: usize) -> Result<Option<OnePageWitness>, PageError> {
    if g.n() > MAX_WITNESS_N {
        return Err(PageError::SizeLimit {
            n: g.n(),
            limit: MAX_WITNESS_N,
        });
    }
    if k > MAX_WITNESS_K {
        return Err(PageError::KOverLimit {
            k,
            limit: MAX_WITNESS_K,
        });
    }
    if is_outerplanar(g) {
        return Ok(Some(OnePageWitness {
            f: Vec::new(),
            w: Vec::new(),
            u: vec![g.vertices()],
            diagram: CrossingDiagram::empty(1),
        }));
    }
    let mut subsets: Vec<VertexSet> = g.vertices().subsets().filter(|s| s.len() >= 2).collect();
    subsets.sort_by_key(|s| (s.len(), s.0));
    Ok(subsets
        .par_iter()
        .find_map_first(|&ws| witness_for(g, ws, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn k4_square(u: Vec<VertexSet>) -> (Graph, OnePageWitness) {
        let g = named::complete(4);
        let f = vec![g.edge_id(0, 2).unwrap(), g.edge_id(1, 3).unwrap()];
        let w = OnePageWitness {
            f,
            w: vec![0, 1, 2, 3],
            u,
            diagram: CrossingDiagram::empty(1),
        };
        (g, w)
    }

    #[test]
    fn square_with_crossing_diagonals() {
        let (g, w) = k4_square(vec![VertexSet::empty(); 4]);
        assert!(check_lemma5(&g, &w, 1).unwrap());
        assert!(!check_lemma5(&g, &w, 0).unwrap());
        assert!(
            !check_lemma5_with(&g, &w, 1, Reading::Literal).unwrap(),
            "literal P2 wants all six edges in F"
        );
    }

    #[test]
    fn edge_between_gaps_is_rejected() {
        // Square 0-1-2-3 with crossing diagonals, plus a pendant path 4-5
        // whose ends hang in different gaps.
        let g = Graph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (0, 3),
                (0, 2),
                (1, 3),
                (0, 4),
                (4, 5),
                (5, 1),
            ],
        )
        .unwrap();
        let f = vec![
            g.edge_id(0, 2).unwrap(),
            g.edge_id(1, 3).unwrap(),
            0,
            1,
            2,
            3,
        ];
        let u = vec![
            VertexSet::singleton(4),
            VertexSet::singleton(5),
            VertexSet::empty(),
            VertexSet::empty(),
        ];
        let w = OnePageWitness {
            f: f.clone(),
            w: vec![0, 1, 2, 3],
            u,
            diagram: CrossingDiagram::empty(1),
        };
        assert!(!check_lemma5(&g, &w, 1).unwrap());
        let u = vec![
            VertexSet::from_iter([4, 5]),
            VertexSet::empty(),
            VertexSet::empty(),
            VertexSet::empty(),
        ];
        let w = OnePageWitness {
            f,
            w: vec![0, 1, 2, 3],
            u,
            diagram: CrossingDiagram::empty(1),
        };
        assert!(check_lemma5(&g, &w, 1).unwrap());
    }

    #[test]
    fn searches() {
        let k4 = named::complete(4);
        let w = find_lemma5_witness(&k4, 1).unwrap().expect("cr1(K4) = 1");
        assert!(check_lemma5(&k4, &w, 1).unwrap());
        assert_eq!(w.diagram.crossing_count(), 1);
        assert!(find_lemma5_witness(&k4, 0).unwrap().is_none());
        let c6 = named::cycle(6);
        let w = find_lemma5_witness(&c6, 0).unwrap().unwrap();
        assert!(w.f.is_empty() && w.u == vec![c6.vertices()]);
        assert!(find_lemma5_witness(&named::complete(9), 0).is_err());
        assert!(find_lemma5_witness(&k4, 3).is_err());
    }

    #[test]
    fn literal_reading_accepts_k4_without_crossings() {
        // W = {0, 1}, F = {01}, everything else in the unconstrained last gap.
        let g = named::complete(4);
        let w = OnePageWitness {
            f: vec![0],
            w: vec![0, 1],
            u: vec![VertexSet::empty(), VertexSet::from_iter([2, 3])],
            diagram: CrossingDiagram::empty(1),
        };
        assert!(check_lemma5_with(&g, &w, 0, Reading::Literal).unwrap());
        assert!(!check_lemma5(&g, &w, 0).unwrap());
    }
}
