//! Simple undirected graphs with stable vertex and edge ids, plus the
//! structural primitives the rest of the crate is built on.

mod io;
mod minor;
mod sets;
mod structure;
mod subham;
mod transform;

pub use io::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};
pub(crate) use minor::next_permutation;
pub use minor::{is_minor, is_outerplanar, is_planar};
pub use sets::{EdgeSet, VertexSet};
pub use structure::{
    cycle_order, flaps, is_simple_cycle, isthmuses, isthmuses_within, simple_cycles_within, Flap,
};
pub use subham::{is_subhamiltonian, subhamiltonian_order};
pub use transform::{
    add_ear, clique_sum, identify_vertices, identify_with_maps, is_clique, Identified,
};

use thiserror::Error;

pub const MAX_VERTICES: usize = VertexSet::CAPACITY;
pub const MAX_EDGES: usize = EdgeSet::CAPACITY;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("graph too large: {0}")]
    TooLarge(String),
    #[error("cannot identify a vertex with itself ({0})")]
    IdentifySame(usize),
    #[error("vertices {0:?} do not form a clique")]
    NotAClique(Vec<usize>),
    #[error("clique-sum: {0}")]
    InvalidCliqueSum(String),
    #[error("edge set is not a simple cycle")]
    NotACycle,
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edge ids are assigned in insertion order and never change. Endpoints are
/// stored with the smaller id first.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<VertexSet>,
    inc: Vec<EdgeSet>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(format!(
                "{n} vertices (limit {MAX_VERTICES})"
            )));
        }
        Ok(Graph {
            n,
            edges: Vec::new(),
            adj: vec![VertexSet::empty(); n],
            inc: vec![EdgeSet::empty(); n],
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds edge `u-v` and returns its id.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        if self.edges.len() == MAX_EDGES {
            return Err(GraphError::TooLarge(format!("more than {MAX_EDGES} edges")));
        }
        let id = self.edges.len();
        self.edges.push((u.min(v), u.max(v)));
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.inc[u].insert(id);
        self.inc[v].insert(id);
        Ok(id)
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn incident(&self, v: usize) -> EdgeSet {
        self.inc[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if !self.has_edge(u, v) {
            return None;
        }
        self.inc[u].intersection(self.inc[v]).first()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.m())
    }

    /// Endpoints of every edge in `es`.
    pub fn endpoints(&self, es: EdgeSet) -> VertexSet {
        let mut s = VertexSet::empty();
        for e in es.iter() {
            let (u, v) = self.edges[e];
            s.insert(u);
            s.insert(v);
        }
        s
    }

    /// Edges with both endpoints in `vs`.
    pub fn induced_edges(&self, vs: VertexSet) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| vs.contains(u) && vs.contains(v))
            .map(|(i, _)| i)
            .collect()
    }

    /// Induced subgraph on `vs`, relabelled to `0..|vs|` in increasing id
    /// order. The returned vector maps new ids to old ones.
    pub fn induced_subgraph(&self, vs: VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = vs.iter().filter(|&v| v < self.n).collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut g = Graph::new(old.len()).expect("subgraph is smaller");
        for &(u, v) in &self.edges {
            if new_of[u] != usize::MAX && new_of[v] != usize::MAX {
                g.add_edge(new_of[u], new_of[v]).expect("simple");
            }
        }
        (g, old)
    }

    /// Spanning subgraph keeping only the edges in `es` (same vertex ids;
    /// edge ids are renumbered in increasing order of the old ids).
    pub fn edge_subgraph(&self, es: EdgeSet) -> Graph {
        let mut g = Graph::new(self.n).expect("same size");
        for e in es.iter() {
            let (u, v) = self.edges[e];
            g.add_edge(u, v).expect("simple");
        }
        g
    }

    /// Vertex-disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = Graph::new(self.n + other.n)?;
        for &(u, v) in &self.edges {
            g.add_edge(u, v)?;
        }
        for &(u, v) in &other.edges {
            g.add_edge(u + self.n, v + self.n)?;
        }
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`; edge ids keep their order.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n).expect("same size");
        for &(u, v) in &self.edges {
            g.add_edge(perm[u], perm[v]).expect("simple");
        }
        g
    }

    /// Connected components of the subgraph induced by `within`.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(s) = left.first() {
            let comp = self.reach(s, within);
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Vertices reachable from `s` inside `within`.
    pub fn reach(&self, s: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(s);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier.iter() {
                next = next.union(self.adj[v]);
            }
            next = next.intersection(within).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Whether `vs` induces a connected subgraph (the empty set is connected).
    pub fn is_connected_set(&self, vs: VertexSet) -> bool {
        match vs.first() {
            None => true,
            Some(s) => self.reach(s, vs) == vs,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_set(self.vertices())
    }

    /// Whether the subgraph formed by edge set `es` (and the vertices it
    /// touches) is connected. The empty edge set counts as connected.
    pub fn is_connected_edges(&self, es: EdgeSet) -> bool {
        let touched = self.endpoints(es);
        let Some(s) = touched.first() else {
            return true;
        };
        let mut seen = VertexSet::singleton(s);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier.iter() {
                for e in self.inc[v].intersection(es).iter() {
                    let (a, b) = self.edges[e];
                    next.insert(a);
                    next.insert(b);
                }
            }
            next = next.difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen == touched
    }

    /// Degree of `v` counting only edges in `es`.
    #[inline]
    pub fn degree_in(&self, v: usize, es: EdgeSet) -> usize {
        self.inc[v].intersection(es).len()
    }
}

/// Named small graphs used throughout tests and examples.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b).unwrap();
        for u in 0..a {
            for v in 0..b {
                g.add_edge(u, a + v).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for i in 0..n {
            g.add_edge(i, (i + 1) % n).unwrap();
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }

    pub fn star(leaves: usize) -> Graph {
        complete_bipartite(1, leaves)
    }

    /// Wheel with `rim` rim vertices (hub is vertex `rim`).
    pub fn wheel(rim: usize) -> Graph {
        let mut g = Graph::new(rim + 1).unwrap();
        for i in 0..rim {
            g.add_edge(i, (i + 1) % rim).unwrap();
        }
        for i in 0..rim {
            g.add_edge(i, rim).unwrap();
        }
        g
    }

    /// Triangular prism.
    pub fn prism() -> Graph {
        Graph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap()
    }

    /// 3-dimensional hypercube.
    pub fn cube() -> Graph {
        let mut g = Graph::new(8).unwrap();
        for u in 0..8usize {
            for bit in 0..3 {
                let v = u ^ (1 << bit);
                if u < v {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::new(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange(3, 3)));
    }

    #[test]
    fn induced_and_components() {
        let g = named::cycle(5);
        let (h, map) = g.induced_subgraph([0, 1, 3].into_iter().collect());
        assert_eq!(h.m(), 1);
        assert_eq!(map, vec![0, 1, 3]);
        assert_eq!(h.components().len(), 2);
        assert!(g.is_connected());
        assert!(g.is_connected_edges(EdgeSet::from_iter([0, 1])));
        assert!(!g.is_connected_edges(EdgeSet::from_iter([0, 2])));
    }

    #[test]
    fn named_graphs() {
        assert_eq!(named::complete(5).m(), 10);
        assert_eq!(named::complete_bipartite(3, 3).m(), 9);
        assert_eq!(named::cube().m(), 12);
        assert_eq!(named::wheel(5).m(), 10);
        assert_eq!(named::prism().m(), 9);
    }
}
