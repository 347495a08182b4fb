//! Structural characterizations of small crossing numbers, the two graph
//! constructions they rely on (page separation and planarization), and
//! brute-force witness searches.

mod onepage;
mod props;
mod twopage;

pub use onepage::{check_lemma5, check_lemma5_with, find_lemma5_witness, OnePageWitness, Reading};
pub use props::{
    any_cycle_decomposition, crossing_paths_exist, in_crossing_position, piece_closure,
};
pub(crate) use props::{piece_fits, pieces_cross};
pub use twopage::{
    check_lemma8, check_lemma9, cr2_via_characterization, find_lemma8_witness, find_lemma9_witness,
};

use crate::bookdraw::{CrossingDiagram, DrawError};
use crate::graph::{EdgeSet, Graph, GraphError, VertexSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PageError {
    #[error("edge sets do not partition the edges")]
    NotAPartition,
    #[error("malformed witness: {0}")]
    Malformed(String),
    #[error("diagram does not match the graph: {0}")]
    Inconsistent(String),
    #[error("graph has {n} vertices, limit is {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("k = {k} exceeds the limit {limit}")]
    KOverLimit { k: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Draw(#[from] DrawError),
}

/// Copy of every vertex on each page: `(v, A)` is `v`, `(v, B)` is `n + v`.
///
/// Edges come in three blocks: the matching `v – n+v`, then the `a` edges
/// between A copies, then the `b` edges between B copies.
pub fn separate(g: &Graph, a: EdgeSet, b: EdgeSet) -> Result<Graph, PageError> {
    if !a.is_disjoint(b) || a.union(b) != g.all_edges() {
        return Err(PageError::NotAPartition);
    }
    let n = g.n();
    let mut s = Graph::new(2 * n)?;
    for v in 0..n {
        s.add_edge(v, n + v)?;
    }
    for e in a.iter() {
        let (u, v) = g.edge(e);
        s.add_edge(u, v)?;
    }
    for e in b.iter() {
        let (u, v) = g.edge(e);
        s.add_edge(n + u, n + v)?;
    }
    Ok(s)
}

/// A graph with crossing edges replaced by paths through new vertices.
#[derive(Debug, Clone)]
pub struct PlanarizedGraph {
    pub graph: Graph,
    /// For each original edge, the edge ids of its replacement path in
    /// order from the smaller endpoint of the chord; unmapped edges map to
    /// a single edge.
    pub paths: Vec<Vec<usize>>,
    /// The new degree-4 vertices, one per crossing (ids `n..`).
    pub crossing: VertexSet,
    /// Path edges of mapped edges, by page of their segment.
    pub page_edges: [EdgeSet; 2],
}

/// Point `i` of `p` on the unit circle, nudged off the regular polygon so
/// that no three chords are concurrent.
fn on_circle(i: usize, p: usize) -> (f64, f64) {
    let nudge = 0.3 * (i as f64 * 0.618_033_988_7).fract();
    let t = std::f64::consts::TAU * (i as f64 + nudge) / p as f64;
    (t.cos(), t.sin())
}

/// Parameter along the chord `a→b` where it meets the chord `c→d`.
fn meet(p: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> f64 {
    let (pa, pb, pc, pd) = (
        on_circle(a, p),
        on_circle(b, p),
        on_circle(c, p),
        on_circle(d, p),
    );
    let r = (pb.0 - pa.0, pb.1 - pa.1);
    let s = (pd.0 - pc.0, pd.1 - pc.1);
    let cross = |u: (f64, f64), v: (f64, f64)| u.0 * v.1 - u.1 * v.0;
    cross((pc.0 - pa.0, pc.1 - pa.1), s) / cross(r, s)
}

/// Checks that `points`/`edge_map` place `d` on `g`: points go to distinct
/// vertices, segments to distinct edges joining the images of their ends.
pub(crate) fn check_placement(
    g: &Graph,
    d: &CrossingDiagram,
    points: &[usize],
    edge_map: &[usize],
) -> Result<(), PageError> {
    d.validate()?;
    let bad = |m: String| Err(PageError::Inconsistent(m));
    if points.len() != d.points || edge_map.len() != d.segments.len() {
        return bad("wrong number of points or segments".into());
    }
    let mut seen = VertexSet::empty();
    for &v in points {
        if v >= g.n() || seen.contains(v) {
            return bad(format!("point image {v} is repeated or out of range"));
        }
        seen.insert(v);
    }
    let mut used = EdgeSet::empty();
    for (s, &e) in edge_map.iter().enumerate() {
        if e >= g.m() || used.contains(e) {
            return bad(format!("segment image {e} is repeated or out of range"));
        }
        used.insert(e);
        let (a, b) = d.segments[s];
        let (u, v) = g.edge(e);
        let (x, y) = (points[a], points[b]);
        if !((u == x && v == y) || (u == y && v == x)) {
            return bad(format!("segment {s} does not match edge {e}"));
        }
    }
    Ok(())
}

/// Replaces each edge in `edge_map` by a path through one new vertex per
/// crossing of its segment, ordered along the chord.
pub fn planarize(
    g: &Graph,
    d: &CrossingDiagram,
    points: &[usize],
    edge_map: &[usize],
) -> Result<PlanarizedGraph, PageError> {
    check_placement(g, d, points, edge_map)?;
    let n = g.n();
    let pairs = d.crossing_pairs();
    if n + pairs.len() > VertexSet::CAPACITY {
        return Err(GraphError::TooLarge(format!("{} vertices", n + pairs.len())).into());
    }
    // Crossings on each segment, with their position along the chord.
    let mut on_seg: Vec<Vec<(f64, usize)>> = vec![Vec::new(); d.segments.len()];
    for (j, &(s, t)) in pairs.iter().enumerate() {
        on_seg[s].push((meet(d.points, d.segments[s], d.segments[t]), n + j));
        on_seg[t].push((meet(d.points, d.segments[t], d.segments[s]), n + j));
    }
    let seg_of: Vec<Option<usize>> = (0..g.m())
        .map(|e| edge_map.iter().position(|&x| x == e))
        .collect();
    let mut graph = Graph::new(n + pairs.len())?;
    let mut paths = Vec::with_capacity(g.m());
    let mut page_edges = [EdgeSet::empty(); 2];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let Some(s) = seg_of[e] else {
            paths.push(vec![graph.add_edge(u, v)?]);
            continue;
        };
        let (a, b) = d.segments[s];
        let mut stops = on_seg[s].clone();
        stops.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut walk = vec![points[a]];
        walk.extend(stops.iter().map(|&(_, x)| x));
        walk.push(points[b]);
        let mut path = Vec::new();
        for w in walk.windows(2) {
            let id = graph.add_edge(w[0], w[1])?;
            page_edges[d.color(s) as usize].insert(id);
            path.push(id);
        }
        paths.push(path);
    }
    let crossing = (n..n + pairs.len()).fold(VertexSet::empty(), |acc, x| acc.with(x));
    Ok(PlanarizedGraph {
        graph,
        paths,
        crossing,
        page_edges,
    })
}

/// Six-way edge partition: for each page, isthmus, cycle and chord edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Partition6 {
    pub ab: EdgeSet,
    pub ac: EdgeSet,
    pub ai: EdgeSet,
    pub bb: EdgeSet,
    pub bc: EdgeSet,
    pub bi: EdgeSet,
}

const PART_NAMES: [&str; 6] = ["Ab", "Ac", "Ai", "Bb", "Bc", "Bi"];

impl Partition6 {
    pub fn parts(&self) -> [EdgeSet; 6] {
        [self.ab, self.ac, self.ai, self.bb, self.bc, self.bi]
    }

    pub fn from_parts(p: [EdgeSet; 6]) -> Self {
        Partition6 {
            ab: p[0],
            ac: p[1],
            ai: p[2],
            bb: p[3],
            bc: p[4],
            bi: p[5],
        }
    }

    /// Page A edges.
    pub fn a(&self) -> EdgeSet {
        self.ab.union(self.ac).union(self.ai)
    }

    pub fn b(&self) -> EdgeSet {
        self.bb.union(self.bc).union(self.bi)
    }

    /// `(b, c, i)` for page 0 (A) or 1 (B).
    pub fn page(&self, which: usize) -> (EdgeSet, EdgeSet, EdgeSet) {
        if which == 0 {
            (self.ab, self.ac, self.ai)
        } else {
            (self.bb, self.bc, self.bi)
        }
    }

    pub fn is_partition_of(&self, all: EdgeSet) -> bool {
        let parts = self.parts();
        let mut acc = EdgeSet::empty();
        for p in parts {
            if !acc.is_disjoint(p) {
                return false;
            }
            acc = acc.union(p);
        }
        acc == all
    }

    /// Reads the six-line form written by `Display`; missing lines are empty.
    pub fn parse(text: &str) -> Result<Self, PageError> {
        let mut parts = [EdgeSet::empty(); 6];
        let mut seen = [false; 6];
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (name, rest) = line
                .split_once(':')
                .ok_or_else(|| PageError::Malformed(format!("expected 'Xy: …', got {line:?}")))?;
            let slot = PART_NAMES
                .iter()
                .position(|&p| p == name.trim())
                .ok_or_else(|| PageError::Malformed(format!("unknown part {name:?}")))?;
            if seen[slot] {
                return Err(PageError::Malformed(format!("part {name} given twice")));
            }
            seen[slot] = true;
            for tok in rest.split_whitespace() {
                let e: usize = tok
                    .parse()
                    .map_err(|_| PageError::Malformed(format!("bad edge id {tok:?}")))?;
                if e >= EdgeSet::CAPACITY {
                    return Err(PageError::Malformed(format!("edge id {e} too large")));
                }
                parts[slot].insert(e);
            }
        }
        Ok(Partition6::from_parts(parts))
    }
}

impl fmt::Display for Partition6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, set) in PART_NAMES.iter().zip(self.parts()) {
            write!(f, "{name}:")?;
            for e in set.iter() {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn separate_examples() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let s = separate(&g, g.all_edges(), EdgeSet::empty()).unwrap();
        assert_eq!((s.n(), s.m()), (4, 3));
        assert!(s.has_edge(0, 1) && s.has_edge(0, 2) && s.has_edge(1, 3));

        let c4 = named::cycle(4);
        let a = EdgeSet::from_iter([0, 2]);
        let s = separate(&c4, a, c4.all_edges().difference(a)).unwrap();
        assert_eq!((s.n(), s.m()), (8, 8));
        assert!(s.vertices().iter().all(|v| s.degree(v) == 2) && s.is_connected());
        assert!(separate(&c4, a, EdgeSet::empty()).is_err());
    }

    #[test]
    fn planarize_examples() {
        let k4 = named::complete(4);
        let d = CrossingDiagram {
            points: 4,
            segments: vec![(0, 2), (1, 3)],
            colors: None,
        };
        let e02 = k4.edge_id(0, 2).unwrap();
        let e13 = k4.edge_id(1, 3).unwrap();
        let p = planarize(&k4, &d, &[0, 1, 2, 3], &[e02, e13]).unwrap();
        assert_eq!((p.graph.n(), p.graph.m()), (5, 8));
        assert_eq!(p.graph.degree(4), 4);
        assert!(crate::graph::is_planar(&p.graph));
        assert!(!p.graph.has_edge(0, 2));

        let empty = planarize(&k4, &CrossingDiagram::empty(1), &[], &[]).unwrap();
        assert_eq!(empty.graph.edges(), k4.edges());

        // Segment 0-3 is crossed by both 1-4 and 2-5.
        let d = CrossingDiagram {
            points: 6,
            segments: vec![(0, 3), (1, 4), (2, 5)],
            colors: None,
        };
        let g = Graph::from_edges(6, &[(0, 3), (1, 4), (2, 5)]).unwrap();
        let p = planarize(&g, &d, &[0, 1, 2, 3, 4, 5], &[0, 1, 2]).unwrap();
        assert!(p.paths.iter().all(|path| path.len() == 3));
        assert!(p.crossing.iter().all(|x| p.graph.degree(x) == 4));
        assert!(crate::graph::is_planar(&p.graph));

        let d = CrossingDiagram {
            points: 6,
            segments: vec![(0, 3), (1, 5), (2, 4)],
            colors: None,
        };
        let g = Graph::from_edges(6, &[(0, 3), (1, 5), (2, 4)]).unwrap();
        let p = planarize(&g, &d, &[0, 1, 2, 3, 4, 5], &[0, 1, 2]).unwrap();
        let path: Vec<(usize, usize)> = p.paths[0].iter().map(|&e| p.graph.edge(e)).collect();
        assert_eq!(path.len(), 3);
        // From 0 the chord meets 1-5 first, then 2-4.
        let first = path[0].0.max(path[0].1);
        assert!(p.graph.neighbors(first).contains(1) && p.graph.neighbors(first).contains(5));
    }

    #[test]
    fn partition_round_trip() {
        let p = Partition6 {
            ac: EdgeSet::from_iter([0, 1, 2]),
            bi: EdgeSet::from_iter([3]),
            ..Default::default()
        };
        let text = p.to_string();
        assert!(text.starts_with("Ab:\nAc: 0 1 2\n"));
        assert_eq!(Partition6::parse(&text).unwrap(), p);
        assert!(Partition6::parse("Zz: 1").is_err());
    }
}
