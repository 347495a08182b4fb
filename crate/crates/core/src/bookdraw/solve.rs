//! Exact 1-page and 2-page crossing numbers by branch-and-bound over cyclic
//! spine orders.
//!
//! Every component is solved on its own and the components are laid out
//! one after another on the spine; with no edges between components this is
//! optimal. Within a component the first vertex is fixed (rotation) and two
//! further vertices are kept in a fixed relative order (reflection). Orders
//! are explored lexicographically and only strict improvements replace the
//! incumbent, so the returned witness is deterministic.

use super::{BookDrawing, DrawError};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_CR1_MAX_N: usize = 11;
pub const DEFAULT_CR2_MAX_N: usize = 9;

fn check_size(g: &Graph, max_n: usize) -> Result<(), DrawError> {
    if g.n() > max_n {
        Err(DrawError::SizeLimit {
            n: g.n(),
            limit: max_n,
        })
    } else {
        Ok(())
    }
}

/// A connected component relabelled to `0..k` with its original ids.
struct Part {
    graph: Graph,
    ids: Vec<usize>,
}

fn parts(g: &Graph) -> Vec<Part> {
    g.components()
        .into_iter()
        .map(|c: VertexSet| {
            let (graph, ids) = g.induced_subgraph(c);
            Part { graph, ids }
        })
        .collect()
}

/// Enumerates spine orders of a connected graph with rotation and reflection
/// pruning. `step` is told each newly placed vertex and returns the running
/// cost, or `None` to prune. `leaf` sees every complete order.
struct OrderSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    pos: Vec<usize>,
    placed: VertexSet,
}

const UNPLACED: usize = usize::MAX;

impl<'a> OrderSearch<'a> {
    fn new(g: &'a Graph) -> Self {
        OrderSearch {
            g,
            order: Vec::with_capacity(g.n()),
            pos: vec![UNPLACED; g.n()],
            placed: VertexSet::empty(),
        }
    }

    /// Crossings created by appending `v`: its edges back to placed vertices
    /// against already closed edges.
    fn new_crossings(&self, v: usize) -> usize {
        let g = self.g;
        let mut count = 0;
        for u in g.neighbors(v).intersection(self.placed).iter() {
            let pu = self.pos[u];
            for (a, b) in g.edges().iter().copied() {
                if a == u || b == u || a == v || b == v {
                    continue;
                }
                let (pa, pb) = (self.pos[a], self.pos[b]);
                if pa == UNPLACED || pb == UNPLACED {
                    continue;
                }
                if pa.min(pb) < pu && pu < pa.max(pb) {
                    count += 1;
                }
            }
        }
        count
    }

    fn push(&mut self, v: usize) {
        self.pos[v] = self.order.len();
        self.order.push(v);
        self.placed.insert(v);
    }

    fn pop(&mut self) {
        let v = self.order.pop().expect("non-empty");
        self.pos[v] = UNPLACED;
        self.placed.remove(v);
    }

    /// Whether placing `v` now breaks the reflection convention that vertex 1
    /// precedes vertex 2.
    fn reflection_blocked(&self, v: usize) -> bool {
        self.g.n() >= 3 && v == 2 && !self.placed.contains(1)
    }
}

fn cr1_component(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    if n <= 3 {
        return (0, (0..n).collect());
    }
    struct State<'a> {
        search: OrderSearch<'a>,
        best: usize,
        best_order: Vec<usize>,
    }
    fn rec(st: &mut State, cost: usize) {
        let n = st.search.g.n();
        if st.search.order.len() == n {
            if cost < st.best {
                st.best = cost;
                st.best_order = st.search.order.clone();
            }
            return;
        }
        for v in 1..n {
            if st.search.placed.contains(v) || st.search.reflection_blocked(v) {
                continue;
            }
            let c = cost + st.search.new_crossings(v);
            if c >= st.best {
                continue;
            }
            st.search.push(v);
            rec(st, c);
            st.search.pop();
            if st.best == 0 {
                return;
            }
        }
    }
    let mut st = State {
        search: OrderSearch::new(g),
        best: usize::MAX,
        best_order: Vec::new(),
    };
    st.search.push(0);
    rec(&mut st, 0);
    (st.best, st.best_order)
}

/// Exact 1-page crossing number with a witness drawing.
pub fn cr1_exact(g: &Graph) -> Result<(usize, BookDrawing), DrawError> {
    cr1_exact_with_limit(g, DEFAULT_CR1_MAX_N)
}

pub fn cr1_exact_with_limit(g: &Graph, max_n: usize) -> Result<(usize, BookDrawing), DrawError> {
    check_size(g, max_n)?;
    let mut total = 0;
    let mut spine = Vec::with_capacity(g.n());
    for part in parts(g) {
        let (k, order) = cr1_component(&part.graph);
        total += k;
        spine.extend(order.into_iter().map(|v| part.ids[v]));
    }
    Ok((total, BookDrawing::one_page(g, spine)))
}

/// Pairs of edges whose endpoints interleave under `order`, as adjacency
/// lists over edge ids.
pub fn conflict_graph(g: &Graph, order: &[usize]) -> Vec<Vec<usize>> {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let edges = g.edges();
    let mut adj = vec![Vec::new(); edges.len()];
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        for j in i + 1..edges.len() {
            let (c, d) = edges[j];
            if super::interleaved(pos[a], pos[b], pos[c], pos[d]) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

/// Minimum number of monochromatic conflicts over all 2-colourings of one
/// connected conflict component, searching only below `cutoff`. Returns the
/// optimum and a colouring when it is below the cutoff.
fn min_mono_component(
    adj: &[Vec<usize>],
    nodes: &[usize],
    cutoff: usize,
) -> Option<(usize, Vec<(usize, u8)>)> {
    struct St<'a> {
        adj: &'a [Vec<usize>],
        nodes: &'a [usize],
        color: Vec<u8>,
        best: usize,
        best_color: Option<Vec<(usize, u8)>>,
    }
    const NONE: u8 = 2;
    fn rec(st: &mut St, i: usize, cost: usize) {
        if i == st.nodes.len() {
            if cost < st.best {
                st.best = cost;
                st.best_color = Some(st.nodes.iter().map(|&x| (x, st.color[x])).collect());
            }
            return;
        }
        let x = st.nodes[i];
        let choices: &[u8] = if i == 0 { &[0] } else { &[0, 1] };
        for &c in choices {
            let added = st.adj[x].iter().filter(|&&y| st.color[y] == c).count();
            if cost + added >= st.best {
                continue;
            }
            st.color[x] = c;
            rec(st, i + 1, cost + added);
            st.color[x] = NONE;
            if st.best == 0 {
                return;
            }
        }
    }
    let mut st = St {
        adj,
        nodes,
        color: vec![NONE; adj.len()],
        best: cutoff,
        best_color: None,
    };
    rec(&mut st, 0, 0);
    st.best_color.map(|c| (st.best, c))
}

/// Breadth-first ordering of each connected component of the conflict graph
/// (isolated edges are skipped: they never cross anything).
fn conflict_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for s in 0..adj.len() {
        if seen[s] || adj[s].is_empty() {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Optimal page assignment for a fixed spine order, if it beats `cutoff`.
pub fn best_page_assignment(g: &Graph, order: &[usize], cutoff: usize) -> Option<(usize, Vec<u8>)> {
    let adj = conflict_graph(g, order);
    let mut pages = vec![0u8; g.m()];
    let mut total = 0;
    for comp in conflict_components(&adj) {
        let (k, colors) = min_mono_component(&adj, &comp, cutoff.checked_sub(total)?)?;
        total += k;
        for (e, c) in colors {
            pages[e] = c;
        }
    }
    (total < cutoff).then_some((total, pages))
}

fn for_each_order(g: &Graph, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let n = g.n();
    if n == 0 {
        visit(&[]);
        return;
    }
    fn rec(s: &mut OrderSearch, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = s.g.n();
        if s.order.len() == n {
            return visit(&s.order);
        }
        for v in 1..n {
            if s.placed.contains(v) || s.reflection_blocked(v) {
                continue;
            }
            s.push(v);
            let stop = rec(s, visit);
            s.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let mut s = OrderSearch::new(g);
    s.push(0);
    rec(&mut s, visit);
}

fn cr2_component(g: &Graph) -> (usize, Vec<usize>, Vec<u8>) {
    let n = g.n();
    if n <= 3 {
        return (0, (0..n).collect(), vec![0; g.m()]);
    }
    let mut best = usize::MAX;
    let mut witness = (Vec::new(), Vec::new());
    for_each_order(g, &mut |order| {
        if let Some((k, pages)) = best_page_assignment(g, order, best) {
            best = k;
            witness = (order.to_vec(), pages);
        }
        best == 0
    });
    (best, witness.0, witness.1)
}

/// Exact 2-page crossing number with a witness drawing.
pub fn cr2_exact(g: &Graph) -> Result<(usize, BookDrawing), DrawError> {
    cr2_exact_with_limit(g, DEFAULT_CR2_MAX_N)
}

pub fn cr2_exact_with_limit(g: &Graph, max_n: usize) -> Result<(usize, BookDrawing), DrawError> {
    check_size(g, max_n)?;
    let mut total = 0;
    let mut spine = Vec::with_capacity(g.n());
    let mut pages = vec![0u8; g.m()];
    for part in parts(g) {
        let (k, order, local_pages) = cr2_component(&part.graph);
        total += k;
        spine.extend(order.iter().map(|&v| part.ids[v]));
        for (e, &(u, v)) in part.graph.edges().iter().enumerate() {
            let id = g
                .edge_id(part.ids[u], part.ids[v])
                .expect("edge of the component");
            pages[id] = local_pages[e];
        }
    }
    Ok((total, BookDrawing::two_page(spine, pages)))
}

fn bipartite(adj: &[Vec<usize>]) -> bool {
    let mut color = vec![u8::MAX; adj.len()];
    for s in 0..adj.len() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    stack.push(y);
                } else if color[y] == color[x] {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether some spine order has a bipartite conflict graph.
pub fn is_2page_planar(g: &Graph) -> Result<bool, DrawError> {
    is_2page_planar_with_limit(g, DEFAULT_CR2_MAX_N)
}

pub fn is_2page_planar_with_limit(g: &Graph, max_n: usize) -> Result<bool, DrawError> {
    check_size(g, max_n)?;
    Ok(parts(g).iter().all(|part| {
        let mut found = false;
        for_each_order(&part.graph, &mut |order| {
            found = bipartite(&conflict_graph(&part.graph, order));
            found
        });
        found
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bookdraw::crossings;
    use crate::graph::named;

    #[test]
    fn cr1_examples() {
        assert_eq!(cr1_exact(&named::complete(4)).unwrap().0, 1);
        assert_eq!(cr1_exact(&named::complete(5)).unwrap().0, 5);
        assert_eq!(cr1_exact(&named::cycle(7)).unwrap().0, 0);
        assert!(matches!(
            cr1_exact(&named::path(12)),
            Err(DrawError::SizeLimit { n: 12, limit: 11 })
        ));
    }

    #[test]
    fn cr2_examples() {
        assert_eq!(cr2_exact(&named::complete(4)).unwrap().0, 0);
        assert_eq!(cr2_exact(&named::complete(5)).unwrap().0, 1);
        assert_eq!(cr2_exact(&named::complete_bipartite(2, 3)).unwrap().0, 0);
        assert!(is_2page_planar(&named::complete(4)).unwrap());
        assert!(!is_2page_planar(&named::complete(5)).unwrap());
        assert!(is_2page_planar(&named::cube()).unwrap());
    }

    #[test]
    fn witnesses_attain_the_optimum() {
        for g in [
            named::complete(5),
            named::prism(),
            named::wheel(5),
            named::complete_bipartite(3, 3),
        ] {
            let (k1, d1) = cr1_exact(&g).unwrap();
            assert_eq!(crossings(&g, &d1).unwrap(), k1);
            let (k2, d2) = cr2_exact(&g).unwrap();
            assert_eq!(crossings(&g, &d2).unwrap(), k2);
            assert!(k2 <= k1);
        }
    }

    #[test]
    fn disconnected_inputs_sum_components() {
        let g = named::complete(4)
            .disjoint_union(&named::complete(4))
            .unwrap();
        let (k, d) = cr1_exact(&g).unwrap();
        assert_eq!(k, 2);
        assert_eq!(crossings(&g, &d).unwrap(), 2);
    }
}
