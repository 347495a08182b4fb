use super::{EdgeSet, Graph, GraphError, VertexSet};

/// A flap of a cycle: one class of the edges outside the cycle, where two
/// edges are equivalent when some path through both has no interior vertex
/// on the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flap {
    pub edges: EdgeSet,
    /// Cycle vertices touched by the flap.
    pub attachments: VertexSet,
}

/// Edges lying on no cycle, i.e. whose removal disconnects their endpoints.
pub fn isthmuses(g: &Graph) -> EdgeSet {
    isthmuses_within(g, g.all_edges())
}

/// Isthmuses of the spanning subgraph formed by `es`.
pub fn isthmuses_within(g: &Graph, es: EdgeSet) -> EdgeSet {
    let mut out = EdgeSet::empty();
    for e in es.iter() {
        let (u, v) = g.edge(e);
        if !connects(g, es.without(e), u, v) {
            out.insert(e);
        }
    }
    out
}

/// Whether `u` reaches `v` using only edges in `es`.
pub(crate) fn connects(g: &Graph, es: EdgeSet, u: usize, v: usize) -> bool {
    let mut seen = VertexSet::singleton(u);
    let mut frontier = seen;
    while !frontier.is_empty() {
        if seen.contains(v) {
            return true;
        }
        let mut next = VertexSet::empty();
        for x in frontier.iter() {
            for e in g.incident(x).intersection(es).iter() {
                let (a, b) = g.edge(e);
                next.insert(a ^ b ^ x);
            }
        }
        frontier = next.difference(seen);
        seen = seen.union(frontier);
    }
    seen.contains(v)
}

/// Whether `c` is the edge set of one simple cycle of `g`.
pub fn is_simple_cycle(g: &Graph, c: EdgeSet) -> bool {
    if c.len() < 3 {
        return false;
    }
    let vs = g.endpoints(c);
    vs.iter().all(|v| g.degree_in(v, c) == 2) && g.is_connected_edges(c)
}

/// Every simple cycle of the subgraph formed by `es`, as edge sets, sorted.
pub fn simple_cycles_within(g: &Graph, es: EdgeSet) -> Vec<EdgeSet> {
    fn extend(
        g: &Graph,
        es: EdgeSet,
        start: usize,
        at: usize,
        seen: VertexSet,
        used: EdgeSet,
        out: &mut Vec<EdgeSet>,
    ) {
        for e in g.incident(at).intersection(es).difference(used).iter() {
            let (a, b) = g.edge(e);
            let next = a ^ b ^ at;
            if next == start && used.len() >= 2 {
                out.push(used.with(e));
            } else if next > start && !seen.contains(next) {
                extend(g, es, start, next, seen.with(next), used.with(e), out);
            }
        }
    }
    let mut out = Vec::new();
    for s in g.endpoints(es).iter() {
        extend(
            g,
            es,
            s,
            s,
            VertexSet::singleton(s),
            EdgeSet::empty(),
            &mut out,
        );
    }
    // Each cycle is found once per direction.
    out.sort_by_key(|c| c.0);
    out.dedup();
    out
}

/// Vertices of the simple cycle `c` in cyclic order, starting at its
/// smallest vertex.
pub fn cycle_order(g: &Graph, c: EdgeSet) -> Result<Vec<usize>, GraphError> {
    if !is_simple_cycle(g, c) {
        return Err(GraphError::NotACycle);
    }
    let start = g.endpoints(c).first().expect("non-empty cycle");
    let mut order = vec![start];
    let mut used = EdgeSet::empty();
    let mut at = start;
    loop {
        let e = g
            .incident(at)
            .intersection(c)
            .difference(used)
            .first()
            .expect("degree two");
        used.insert(e);
        let (a, b) = g.edge(e);
        at = a ^ b ^ at;
        if at == start {
            return Ok(order);
        }
        order.push(at);
    }
}

/// Flaps of the simple cycle `c`.
pub fn flaps(g: &Graph, c: EdgeSet) -> Result<Vec<Flap>, GraphError> {
    if !is_simple_cycle(g, c) {
        return Err(GraphError::NotACycle);
    }
    let on_cycle = g.endpoints(c);
    let rest = g.all_edges().difference(c);
    let mut left = rest;
    let mut out = Vec::new();
    while let Some(seed) = left.first() {
        // Grow the class through shared endpoints that are off the cycle.
        let mut class = EdgeSet::singleton(seed);
        let mut frontier = class;
        while !frontier.is_empty() {
            let mut next = EdgeSet::empty();
            for e in frontier.iter() {
                let (a, b) = g.edge(e);
                for x in [a, b] {
                    if !on_cycle.contains(x) {
                        next = next.union(g.incident(x).intersection(rest));
                    }
                }
            }
            frontier = next.difference(class);
            class = class.union(frontier);
        }
        left = left.difference(class);
        out.push(Flap {
            edges: class,
            attachments: g.endpoints(class).intersection(on_cycle),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn eset(g: &Graph, pairs: &[(usize, usize)]) -> EdgeSet {
        pairs
            .iter()
            .map(|&(u, v)| g.edge_id(u, v).unwrap())
            .collect()
    }

    #[test]
    fn cycles_of_k4() {
        let k4 = named::complete(4);
        let cs = simple_cycles_within(&k4, k4.all_edges());
        assert_eq!(cs.len(), 7);
        assert!(cs.iter().all(|&c| is_simple_cycle(&k4, c)));
        assert_eq!(cycle_order(&k4, cs[0]).unwrap().len(), cs[0].len());
        assert!(simple_cycles_within(&named::path(4), named::path(4).all_edges()).is_empty());
    }

    #[test]
    fn isthmus_examples() {
        let p = named::path(3);
        assert_eq!(isthmuses(&p), p.all_edges());
        assert!(isthmuses(&named::cycle(4)).is_empty());
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(isthmuses(&g), eset(&g, &[(2, 3)]));
    }

    #[test]
    fn flap_examples() {
        let k4 = named::complete(4);
        let tri = eset(&k4, &[(0, 1), (1, 2), (0, 2)]);
        let fl = flaps(&k4, tri).unwrap();
        assert_eq!(fl.len(), 1);
        assert_eq!(fl[0].edges, eset(&k4, &[(0, 3), (1, 3), (2, 3)]));
        assert_eq!(fl[0].attachments, VertexSet::from_iter([0, 1, 2]));

        let c4 = named::cycle(4);
        assert!(flaps(&c4, c4.all_edges()).unwrap().is_empty());

        let mut chord = named::cycle(4);
        chord.add_edge(0, 2).unwrap();
        let fl = flaps(&chord, eset(&chord, &[(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap();
        assert_eq!(fl.len(), 1);
        assert_eq!(fl[0].edges, eset(&chord, &[(0, 2)]));

        assert_eq!(
            flaps(&k4, eset(&k4, &[(0, 1), (1, 2)])),
            Err(GraphError::NotACycle)
        );
    }
}
