use super::{EdgeSet, Graph, GraphError};

/// Result of identifying two vertices, with the maps needed to carry
/// assignments across.
#[derive(Debug, Clone)]
pub struct Identified {
    pub graph: Graph,
    /// Old vertex id to new vertex id.
    pub vertex_map: Vec<usize>,
    /// Old edge id to new edge id; `None` for the dropped `a-b` edge.
    pub edge_map: Vec<Option<usize>>,
}

/// Merges `b` into `a`. The merged vertex takes id `min(a, b)` and higher
/// ids shift down past the removed one. Parallel edges collapse into one and
/// the edge `a-b`, if present, disappears.
pub fn identify_vertices(g: &Graph, a: usize, b: usize) -> Result<Graph, GraphError> {
    identify_with_maps(g, a, b).map(|r| r.graph)
}

pub fn identify_with_maps(g: &Graph, a: usize, b: usize) -> Result<Identified, GraphError> {
    let n = g.n();
    for v in [a, b] {
        if v >= n {
            return Err(GraphError::VertexOutOfRange(v, n));
        }
    }
    if a == b {
        return Err(GraphError::IdentifySame(a));
    }
    let (keep, gone) = (a.min(b), a.max(b));
    let vertex_map: Vec<usize> = (0..n)
        .map(|v| match v {
            _ if v == gone => keep,
            _ if v > gone => v - 1,
            _ => v,
        })
        .collect();
    let mut graph = Graph::new(n - 1)?;
    let mut edge_map = Vec::with_capacity(g.m());
    for &(u, v) in g.edges() {
        let (x, y) = (vertex_map[u], vertex_map[v]);
        if x == y {
            edge_map.push(None);
        } else if let Some(id) = graph.edge_id(x, y) {
            edge_map.push(Some(id));
        } else {
            edge_map.push(Some(graph.add_edge(x, y)?));
        }
    }
    Ok(Identified {
        graph,
        vertex_map,
        edge_map,
    })
}

/// Adds a new vertex `n` adjacent to `a` and `b`. Existing ids are kept.
pub fn add_ear(g: &Graph, a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == b {
        return Err(GraphError::IdentifySame(a));
    }
    let mut out = Graph::new(g.n() + 1)?;
    for &(u, v) in g.edges() {
        out.add_edge(u, v)?;
    }
    out.add_edge(a, g.n())?;
    out.add_edge(b, g.n())?;
    Ok(out)
}

/// Whether `vs` is a clique of `g`.
pub fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &u)| u < g.n() && vs[i + 1..].iter().all(|&v| u != v && g.has_edge(u, v)))
}

/// Glues `g2` onto `g1` by identifying `map[i].1` (in `g2`) with `map[i].0`
/// (in `g1`), then deletes the clique edges in `drop` (edge ids of `g1`).
///
/// Vertices of `g1` keep their ids; the unmapped vertices of `g2` follow in
/// increasing order.
pub fn clique_sum(
    g1: &Graph,
    g2: &Graph,
    map: &[(usize, usize)],
    drop: EdgeSet,
) -> Result<Graph, GraphError> {
    let left: Vec<usize> = map.iter().map(|p| p.0).collect();
    let right: Vec<usize> = map.iter().map(|p| p.1).collect();
    if !is_clique(g1, &left) {
        return Err(GraphError::NotAClique(left));
    }
    if !is_clique(g2, &right) {
        return Err(GraphError::NotAClique(right));
    }
    let clique_edges: EdgeSet = left
        .iter()
        .enumerate()
        .flat_map(|(i, &u)| left[i + 1..].iter().map(move |&v| (u, v)))
        .filter_map(|(u, v)| g1.edge_id(u, v))
        .collect();
    if !drop.is_subset(clique_edges) {
        return Err(GraphError::InvalidCliqueSum(
            "dropped edges must be edges of the glued clique".into(),
        ));
    }
    let mut new_id = vec![usize::MAX; g2.n()];
    for &(a, b) in map {
        new_id[b] = a;
    }
    let mut next = g1.n();
    for slot in new_id.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let mut out = Graph::new(next)?;
    for (e, &(u, v)) in g1.edges().iter().enumerate() {
        if !drop.contains(e) {
            out.add_edge(u, v)?;
        }
    }
    for &(u, v) in g2.edges() {
        let (x, y) = (new_id[u], new_id[v]);
        let glued = map.iter().any(|p| p.0 == x) && map.iter().any(|p| p.0 == y);
        if !glued {
            out.add_edge(x, y)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn identify_examples() {
        let p = named::path(3);
        let g = identify_vertices(&p, 0, 2).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));

        let c4 = named::cycle(4);
        let g = identify_vertices(&c4, 0, 2).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));

        assert_eq!(
            identify_vertices(&p, 1, 1),
            Err(GraphError::IdentifySame(1))
        );
    }

    #[test]
    fn identify_drops_the_joining_edge() {
        let k3 = named::complete(3);
        let r = identify_with_maps(&k3, 0, 1).unwrap();
        assert_eq!((r.graph.n(), r.graph.m()), (2, 1));
        assert_eq!(r.edge_map.iter().filter(|e| e.is_none()).count(), 1);
    }

    #[test]
    fn clique_sum_examples() {
        let t = named::complete(3);
        let diamond = clique_sum(&t, &t, &[(0, 0), (1, 1)], EdgeSet::empty()).unwrap();
        assert_eq!((diamond.n(), diamond.m()), (4, 5));

        let shared = EdgeSet::singleton(t.edge_id(0, 1).unwrap());
        let c4 = clique_sum(&t, &t, &[(0, 0), (1, 1)], shared).unwrap();
        assert_eq!((c4.n(), c4.m()), (4, 4));
        assert!((0..4).all(|v| c4.degree(v) == 2));

        let p = named::path(3);
        assert!(matches!(
            clique_sum(&p, &t, &[(0, 0), (2, 1)], EdgeSet::empty()),
            Err(GraphError::NotAClique(_))
        ));
        let not_clique_edge = EdgeSet::singleton(t.edge_id(1, 2).unwrap());
        assert!(matches!(
            clique_sum(&t, &t, &[(0, 0), (1, 1)], not_clique_edge),
            Err(GraphError::InvalidCliqueSum(_))
        ));
    }
}
