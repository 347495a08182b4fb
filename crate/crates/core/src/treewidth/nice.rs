use super::{TreeDecomposition, TwError};
use crate::graph::{EdgeSet, Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: VertexSet,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Nodes are stored children-first, so a forward
/// scan is a valid bottom-up order; the root is the last node and has an
/// empty bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|x| x.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// The underlying plain decomposition.
    pub fn to_plain(&self) -> TreeDecomposition {
        let mut tree = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                tree.push((c, i));
            }
        }
        TreeDecomposition {
            bags: self.nodes.iter().map(|x| x.bag).collect(),
            tree,
        }
    }

    /// Checks the node-kind rules and the decomposition invariants for `g`.
    pub fn check(&self, g: &Graph) -> Result<(), TwError> {
        let bad = |i: usize, msg: &str| Err(TwError::Invalid(format!("node {i}: {msg}")));
        if self.nodes.is_empty() || !self.nodes[self.root()].bag.is_empty() {
            return Err(TwError::Invalid("root bag must be empty".into()));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if node.children.iter().any(|&c| c >= i) {
                return bad(i, "children must precede parents");
            }
            let child = |k: usize| self.nodes[node.children[k]].bag;
            let ok = match (node.kind, node.children.len()) {
                (NiceKind::Leaf, 0) => node.bag.is_empty(),
                (NiceKind::Introduce(v), 1) => {
                    !child(0).contains(v) && child(0).with(v) == node.bag
                }
                (NiceKind::Forget(v), 1) => child(0).contains(v) && child(0).without(v) == node.bag,
                (NiceKind::Join, 2) => child(0) == node.bag && child(1) == node.bag,
                _ => false,
            };
            if !ok {
                return bad(i, "node does not match its kind");
            }
        }
        self.to_plain().check(g)
    }

    /// Assigns every edge of `g` to exactly one introduce node whose bag holds
    /// both endpoints, one of which is the introduced vertex.
    pub fn introduced_edges(&self, g: &Graph) -> Vec<EdgeSet> {
        let mut owned = vec![EdgeSet::empty(); self.nodes.len()];
        let mut taken = EdgeSet::empty();
        for i in (0..self.nodes.len()).rev() {
            if let NiceKind::Introduce(v) = self.nodes[i].kind {
                let es = g
                    .incident(v)
                    .intersection(g.induced_edges(self.nodes[i].bag));
                let fresh = es.difference(taken);
                owned[i] = fresh;
                taken = taken.union(fresh);
            }
        }
        owned
    }
}

/// Converts `td` into nice form rooted at bag 0 with an empty root bag.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition, TwError> {
    td.check_shape()?;
    let adj = td.tree_adjacency();
    let mut out = NiceTreeDecomposition { nodes: Vec::new() };
    let top = build(td, &adj, 0, usize::MAX, &mut out);
    let mut cur = top;
    for v in td.bags[0].iter() {
        cur = push_forget(&mut out, cur, v);
    }
    debug_assert_eq!(cur, out.root());
    Ok(out)
}

fn push(
    out: &mut NiceTreeDecomposition,
    kind: NiceKind,
    bag: VertexSet,
    children: Vec<usize>,
) -> usize {
    out.nodes.push(NiceNode {
        kind,
        bag,
        children,
    });
    out.nodes.len() - 1
}

fn push_forget(out: &mut NiceTreeDecomposition, child: usize, v: usize) -> usize {
    let bag = out.nodes[child].bag.without(v);
    push(out, NiceKind::Forget(v), bag, vec![child])
}

fn push_introduce(out: &mut NiceTreeDecomposition, child: usize, v: usize) -> usize {
    let bag = out.nodes[child].bag.with(v);
    push(out, NiceKind::Introduce(v), bag, vec![child])
}

/// Moves from the bag of `node` to `target` by forgetting, then introducing.
fn morph(out: &mut NiceTreeDecomposition, node: usize, target: VertexSet) -> usize {
    let mut cur = node;
    for v in out.nodes[node].bag.difference(target).iter() {
        cur = push_forget(out, cur, v);
    }
    for v in target.difference(out.nodes[cur].bag).iter() {
        cur = push_introduce(out, cur, v);
    }
    cur
}

/// Returns a node whose bag is `td.bags[b]` covering the subtree under `b`.
fn build(
    td: &TreeDecomposition,
    adj: &[Vec<usize>],
    b: usize,
    parent: usize,
    out: &mut NiceTreeDecomposition,
) -> usize {
    let bag = td.bags[b];
    let mut branches: Vec<usize> = adj[b]
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| {
            let sub = build(td, adj, c, b, out);
            morph(out, sub, bag)
        })
        .collect();
    if branches.is_empty() {
        let leaf = push(out, NiceKind::Leaf, VertexSet::empty(), vec![]);
        return morph(out, leaf, bag);
    }
    let mut cur = branches.remove(0);
    for other in branches {
        cur = push(out, NiceKind::Join, bag, vec![cur, other]);
    }
    cur
}
