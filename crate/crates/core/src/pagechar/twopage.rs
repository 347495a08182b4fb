//! Two-page planarity (and one crossing) as edge partitions: per page,
//! cycle edges `c`, chords `i` inside them, and isthmus edges `b`.

use super::props::{
    any_cycle_decomposition, crossing_paths_exist, piece_closure, piece_fits, pieces_cross,
};
use super::{check_placement, planarize, separate, PageError, Partition6};
use crate::bookdraw::enumerate_crossing_diagrams;
use crate::graph::{is_outerplanar, is_planar, isthmuses_within, EdgeSet, Graph, VertexSet};
use crate::mso::book::PathRule;
use rayon::prelude::*;

pub const MAX_PARTITION_N: usize = 8;
pub const MAX_CHARACTERIZATION_N: usize = 6;
pub const MAX_CHARACTERIZATION_K: usize = 1;

/// Which page rules apply: plain, or on a planarization whose crossing
/// vertices are given.
#[derive(Clone, Copy)]
enum Rules {
    Plain,
    Crossed(VertexSet),
}

fn even(g: &Graph, xc: EdgeSet) -> bool {
    g.endpoints(xc).iter().all(|v| g.degree_in(v, xc) % 2 == 0)
}

fn isthmus_ok(g: &Graph, xb: EdgeSet, xc: EdgeSet) -> bool {
    xb.is_subset(isthmuses_within(g, xc.union(xb)))
}

/// The cycle-dependent conditions, for some decomposition of `xc`.
fn cycles_ok(g: &Graph, xc: EdgeSet, xi: EdgeSet, rules: Rules) -> bool {
    match rules {
        Rules::Plain => any_cycle_decomposition(g, xc, &mut |cycles| {
            xi.iter().all(|e| {
                let (u, v) = g.edge(e);
                cycles.iter().any(|&c| {
                    let on = g.endpoints(c);
                    on.contains(u) && on.contains(v)
                })
            }) && cycles
                .iter()
                .all(|&c| !crossing_paths_exist(g, c, xi, PathRule::NotSingleChord))
        }),
        Rules::Crossed(through) => {
            let mut pieces: Vec<EdgeSet> =
                xi.iter().map(|e| piece_closure(g, e, through)).collect();
            pieces.sort_by_key(|p| p.0);
            pieces.dedup();
            any_cycle_decomposition(g, xc, &mut |cycles| {
                pieces
                    .iter()
                    .all(|&p| cycles.iter().any(|&c| piece_fits(g, p, c, through)))
                    && pieces.iter().enumerate().all(|(i, &p)| {
                        pieces[i + 1..]
                            .iter()
                            .all(|&q| cycles.iter().all(|&c| !pieces_cross(g, p, q, c)))
                    })
                    && cycles
                        .iter()
                        .all(|&c| !crossing_paths_exist(g, c, xi, PathRule::AvoidChords))
            })
        }
    }
}

fn page_ok(g: &Graph, (xb, xc, xi): (EdgeSet, EdgeSet, EdgeSet), rules: Rules) -> bool {
    even(g, xc)
        && isthmus_ok(g, xb, xc)
        && (matches!(rules, Rules::Crossed(_))
            || is_outerplanar(&g.edge_subgraph(xb.union(xc).union(xi))))
        && cycles_ok(g, xc, xi, rules)
}

/// Checks a partition against the two-page planarity conditions.
pub fn check_lemma8(g: &Graph, p: &Partition6) -> Result<bool, PageError> {
    if !p.is_partition_of(g.all_edges()) {
        return Err(PageError::NotAPartition);
    }
    Ok(page_ok(g, p.page(0), Rules::Plain)
        && page_ok(g, p.page(1), Rules::Plain)
        && is_planar(&separate(g, p.a(), p.b())?))
}

/// Checks a partition of the planarization of `g` by the diagram `d`
/// (placed by `points` and `edge_map`) against the one-diagram conditions.
pub fn check_lemma9(
    g: &Graph,
    d: &crate::bookdraw::CrossingDiagram,
    points: &[usize],
    edge_map: &[usize],
    p: &Partition6,
) -> Result<bool, PageError> {
    let pg = planarize(g, d, points, edge_map)?;
    let gd = &pg.graph;
    if !p.is_partition_of(gd.all_edges()) {
        return Err(PageError::NotAPartition);
    }
    if !pg.page_edges[0].is_subset(p.a()) || !pg.page_edges[1].is_subset(p.b()) {
        return Ok(false);
    }
    let rules = Rules::Crossed(pg.crossing);
    Ok(page_ok(gd, p.page(0), rules)
        && page_ok(gd, p.page(1), rules)
        && is_planar(&separate(gd, p.a(), p.b())?))
}

/// First split of page `x` into `(b, c, i)` passing the page conditions.
fn split_page(g: &Graph, x: EdgeSet, rules: Rules) -> Option<(EdgeSet, EdgeSet, EdgeSet)> {
    if matches!(rules, Rules::Plain) && !is_outerplanar(&g.edge_subgraph(x)) {
        return None;
    }
    for xc in x.subsets() {
        if !even(g, xc) {
            continue;
        }
        let rest = x.difference(xc);
        let on = g.endpoints(xc);
        let candidates = rest
            .iter()
            .filter(|&e| match rules {
                Rules::Plain => g.endpoints(EdgeSet::singleton(e)).is_subset(on),
                Rules::Crossed(through) => {
                    let touched = g.endpoints(piece_closure(g, e, through));
                    touched.is_subset(on.union(through)) && touched.intersection(on).len() >= 2
                }
            })
            .collect::<EdgeSet>();
        // Edges on a cycle of rest ∪ xc cannot be isthmuses.
        let forced = rest.difference(isthmuses_within(g, x));
        let forced = forced.difference(xc);
        if !forced.is_subset(candidates) {
            continue;
        }
        for extra in candidates.difference(forced).subsets() {
            let xi = forced.union(extra);
            let xb = rest.difference(xi);
            if page_ok(g, (xb, xc, xi), rules) {
                return Some((xb, xc, xi));
            }
        }
    }
    None
}

fn pair_up(a: (EdgeSet, EdgeSet, EdgeSet), b: (EdgeSet, EdgeSet, EdgeSet)) -> Partition6 {
    Partition6 {
        ab: a.0,
        ac: a.1,
        ai: a.2,
        bb: b.0,
        bc: b.1,
        bi: b.2,
    }
}

/// Searches page splits `A ∪ B` (the first edge on page A), then each page
/// separately. Non-planar graphs are rejected up front: a planar separated
/// graph contracts onto `g`.
pub fn find_lemma8_witness(g: &Graph) -> Result<Option<Partition6>, PageError> {
    if g.n() > MAX_PARTITION_N {
        return Err(PageError::SizeLimit {
            n: g.n(),
            limit: MAX_PARTITION_N,
        });
    }
    if !is_planar(g) {
        return Ok(None);
    }
    let all = g.all_edges();
    let Some(first) = all.first() else {
        return Ok(Some(Partition6::default()));
    };
    let pages: Vec<EdgeSet> = all
        .without(first)
        .subsets()
        .map(|s| s.with(first))
        .collect();
    Ok(pages.par_iter().find_map_first(|&a| {
        let b = all.difference(a);
        if !is_planar(&separate(g, a, b).expect("partition")) {
            return None;
        }
        let pa = split_page(g, a, Rules::Plain)?;
        let pb = split_page(g, b, Rules::Plain)?;
        Some(pair_up(pa, pb))
    }))
}

/// Searches partitions of the planarization for the one-diagram conditions.
pub fn find_lemma9_witness(
    g: &Graph,
    d: &crate::bookdraw::CrossingDiagram,
    points: &[usize],
    edge_map: &[usize],
) -> Result<Option<Partition6>, PageError> {
    check_placement(g, d, points, edge_map)?;
    let pg = planarize(g, d, points, edge_map)?;
    let gd = &pg.graph;
    if gd.n() > 2 * MAX_PARTITION_N {
        return Err(PageError::SizeLimit {
            n: gd.n(),
            limit: 2 * MAX_PARTITION_N,
        });
    }
    if !is_planar(gd) {
        return Ok(None);
    }
    let rules = Rules::Crossed(pg.crossing);
    let [p0, p1] = pg.page_edges;
    let free = gd.all_edges().difference(p0).difference(p1);
    let choices: Vec<EdgeSet> = free.subsets().collect();
    Ok(choices.par_iter().find_map_first(|&extra| {
        let a = p0.union(extra);
        let b = gd.all_edges().difference(a);
        if !is_planar(&separate(gd, a, b).expect("partition")) {
            return None;
        }
        let pa = split_page(gd, a, rules)?;
        let pb = split_page(gd, b, rules)?;
        Some(pair_up(pa, pb))
    }))
}

/// Smallest `k ≤ kmax` with a partition witness: `k = 0` by the plain
/// conditions, `k = 1` by some one-crossing two-page diagram placed on `g`.
pub fn cr2_via_characterization(g: &Graph, kmax: usize) -> Result<Option<usize>, PageError> {
    if g.n() > MAX_CHARACTERIZATION_N {
        return Err(PageError::SizeLimit {
            n: g.n(),
            limit: MAX_CHARACTERIZATION_N,
        });
    }
    if kmax > MAX_CHARACTERIZATION_K {
        return Err(PageError::KOverLimit {
            k: kmax,
            limit: MAX_CHARACTERIZATION_K,
        });
    }
    if find_lemma8_witness(g)?.is_some() {
        return Ok(Some(0));
    }
    if kmax == 0 {
        return Ok(None);
    }
    for d in enumerate_crossing_diagrams(1, 2)? {
        let mut points = Vec::new();
        if placements(g, &d, &mut points, &mut |pts, map| {
            find_lemma9_witness(g, &d, pts, map).map(|w| w.is_some())
        })? {
            return Ok(Some(1));
        }
    }
    Ok(None)
}

/// Tries every injective placement of the diagram points on vertices such
/// that every segment lands on an edge.
fn placements(
    g: &Graph,
    d: &crate::bookdraw::CrossingDiagram,
    points: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> Result<bool, PageError>,
) -> Result<bool, PageError> {
    if points.len() == d.points {
        let map: Option<Vec<usize>> = d
            .segments
            .iter()
            .map(|&(a, b)| g.edge_id(points[a], points[b]))
            .collect();
        return match map {
            Some(map) => visit(points, &map),
            None => Ok(false),
        };
    }
    for v in 0..g.n() {
        if points.contains(&v) {
            continue;
        }
        points.push(v);
        let found = placements(g, d, points, visit)?;
        points.pop();
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bookdraw::CrossingDiagram;
    use crate::graph::named;

    #[test]
    fn simple_partitions() {
        let c4 = named::cycle(4);
        let p = Partition6 {
            ac: c4.all_edges(),
            ..Default::default()
        };
        assert!(check_lemma8(&c4, &p).unwrap());
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let p = Partition6 {
            ab: edge.all_edges(),
            ..Default::default()
        };
        assert!(check_lemma8(&edge, &p).unwrap());
        assert!(check_lemma8(&c4, &Partition6::default()).is_err());
    }

    #[test]
    fn witnesses() {
        for g in [named::complete(4), named::complete_bipartite(2, 3)] {
            let p = find_lemma8_witness(&g).unwrap().expect("two-page planar");
            assert!(check_lemma8(&g, &p).unwrap());
        }
        assert!(find_lemma8_witness(&named::complete(5)).unwrap().is_none());
    }

    #[test]
    fn k5_with_one_crossing() {
        let k5 = named::complete(5);
        let d = CrossingDiagram {
            points: 4,
            segments: vec![(0, 2), (1, 3)],
            colors: Some(vec![0, 0]),
        };
        let map = [k5.edge_id(0, 2).unwrap(), k5.edge_id(1, 3).unwrap()];
        let p = find_lemma9_witness(&k5, &d, &[0, 1, 2, 3], &map)
            .unwrap()
            .expect("cr2(K5) = 1");
        assert!(check_lemma9(&k5, &d, &[0, 1, 2, 3], &map, &p).unwrap());
        // Moving a first-page path edge to page B breaks page consistency.
        let pg = planarize(&k5, &d, &[0, 1, 2, 3], &map).unwrap();
        let e = pg.page_edges[0].first().unwrap();
        let mut q = p;
        for part in [&mut q.ab, &mut q.ac, &mut q.ai] {
            part.remove(e);
        }
        q.bb.insert(e);
        assert!(!check_lemma9(&k5, &d, &[0, 1, 2, 3], &map, &q).unwrap());
    }

    #[test]
    fn characterization_numbers() {
        assert_eq!(
            cr2_via_characterization(&named::complete(4), 1).unwrap(),
            Some(0)
        );
        assert_eq!(
            cr2_via_characterization(&named::complete(5), 1).unwrap(),
            Some(1)
        );
        assert_eq!(
            cr2_via_characterization(&named::complete(6), 1).unwrap(),
            None
        );
    }

    #[test]
    fn empty_diagram_on_k4() {
        let k4 = named::complete(4);
        let p = find_lemma8_witness(&k4).unwrap().unwrap();
        let empty = CrossingDiagram::empty(2);
        assert!(check_lemma9(&k4, &empty, &[], &[], &p).unwrap());
    }
}
