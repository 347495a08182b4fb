//! Dynamic programming over a nice tree decomposition.
//!
//! The state of a formula on the part of the graph seen so far mirrors the
//! formula: an atom is a flag recording whether it has been witnessed, a
//! connective is the tuple of its operands' states, and a quantifier is the
//! set of pairs (trace of its variable, state of its body) over all ways of
//! placing the variable so far. A trace keeps only what later events can
//! observe: where a vertex variable sits relative to the current bag,
//! whether an edge variable is placed, and which bag vertices a vertex set
//! contains. Vertices and edges are each introduced once per branch, so
//! every atom is decided at the event that introduces its element.

use super::{CheckError, Meter};
use crate::graph::Graph;
use crate::mso::{Formula, Quantifier, Sort};
use crate::treewidth::{NiceKind, NiceTreeDecomposition};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom {
    In,
    EqElem,
    EqSet,
    Inc,
}

/// Formula with variables as binding depths.
enum Node {
    Const(bool),
    Atom(Atom, usize, usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Quant {
        exists: bool,
        sort: Sort,
        body: Box<Node>,
    },
}

fn lower(f: &Formula, scope: &mut Vec<(String, Sort)>) -> Result<Node, CheckError> {
    let find = |scope: &[(String, Sort)], name: &str| {
        scope
            .iter()
            .rposition(|(n, _)| n == name)
            .ok_or_else(|| CheckError::NotClosed(vec![name.to_string()]))
    };
    Ok(match f {
        Formula::True => Node::Const(true),
        Formula::False => Node::Const(false),
        Formula::Eq(a, b) => {
            let (i, j) = (find(scope, a)?, find(scope, b)?);
            let kind = if scope[i].1.is_set() {
                Atom::EqSet
            } else {
                Atom::EqElem
            };
            Node::Atom(kind, i, j)
        }
        Formula::In(a, b) => Node::Atom(Atom::In, find(scope, a)?, find(scope, b)?),
        Formula::Inc(a, b) => Node::Atom(Atom::Inc, find(scope, a)?, find(scope, b)?),
        Formula::Not(g) => Node::Not(Box::new(lower(g, scope)?)),
        Formula::And(gs) => Node::And(
            gs.iter()
                .map(|g| lower(g, scope))
                .collect::<Result<_, _>>()?,
        ),
        Formula::Or(gs) => Node::Or(
            gs.iter()
                .map(|g| lower(g, scope))
                .collect::<Result<_, _>>()?,
        ),
        Formula::Implies(a, b) => {
            Node::Implies(Box::new(lower(a, scope)?), Box::new(lower(b, scope)?))
        }
        Formula::Quant { q, sort, var, body } => {
            scope.push((var.clone(), *sort));
            let body = lower(body, scope);
            scope.pop();
            Node::Quant {
                exists: *q == Quantifier::Exists,
                sort: *sort,
                body: Box::new(body?),
            }
        }
        Formula::Interpreted { .. } => return Err(CheckError::Unsupported),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Trace {
    /// Vertex variable not placed yet.
    Unplaced,
    At(usize),
    /// Vertex variable placed on a forgotten vertex.
    Gone,
    Placed(bool),
    /// Bag vertices in a vertex set.
    Mask(u64),
    /// Edge sets need no memory: each edge is decided once.
    Nothing,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum State {
    Flag(bool),
    Tuple(Vec<State>),
    Set(BTreeSet<(Trace, State)>),
}

#[derive(Debug, Clone, Copy)]
enum Event {
    Vertex(usize),
    Edge(usize, usize),
    Forget(usize),
}

#[derive(Clone, Copy)]
struct Ctx {
    trace: Trace,
    /// The variable denotes (or contains) the element of the current event.
    hit: bool,
}

fn initial(node: &Node) -> State {
    match node {
        Node::Const(_) | Node::Atom(..) => State::Flag(false),
        Node::Not(a) => State::Tuple(vec![initial(a)]),
        Node::Implies(a, b) => State::Tuple(vec![initial(a), initial(b)]),
        Node::And(xs) | Node::Or(xs) => State::Tuple(xs.iter().map(initial).collect()),
        Node::Quant { sort, body, .. } => {
            let t = match sort {
                Sort::Vertex => Trace::Unplaced,
                Sort::Edge => Trace::Placed(false),
                Sort::VertexSet => Trace::Mask(0),
                Sort::EdgeSet => Trace::Nothing,
            };
            State::Set([(t, initial(body))].into_iter().collect())
        }
    }
}

fn children(node: &Node) -> Vec<&Node> {
    match node {
        Node::Not(a) => vec![a],
        Node::Implies(a, b) => vec![a, b],
        Node::And(xs) | Node::Or(xs) => xs.iter().collect(),
        _ => vec![],
    }
}

/// Successor traces of a variable at an event.
fn options(sort: Sort, t: Trace, ev: Event) -> Vec<Ctx> {
    let keep = |t| Ctx {
        trace: t,
        hit: false,
    };
    match (sort, t, ev) {
        (Sort::Vertex, Trace::Unplaced, Event::Vertex(v)) => {
            vec![
                keep(Trace::Unplaced),
                Ctx {
                    trace: Trace::At(v),
                    hit: true,
                },
            ]
        }
        (Sort::Vertex, Trace::At(u), Event::Forget(v)) if u == v => vec![keep(Trace::Gone)],
        (Sort::VertexSet, Trace::Mask(m), Event::Vertex(v)) => {
            vec![
                keep(Trace::Mask(m)),
                Ctx {
                    trace: Trace::Mask(m | 1 << v),
                    hit: true,
                },
            ]
        }
        (Sort::VertexSet, Trace::Mask(m), Event::Forget(v)) => {
            vec![keep(Trace::Mask(m & !(1 << v)))]
        }
        (Sort::Edge, Trace::Placed(false), Event::Edge(..)) => {
            vec![
                keep(Trace::Placed(false)),
                Ctx {
                    trace: Trace::Placed(true),
                    hit: true,
                },
            ]
        }
        (Sort::EdgeSet, _, Event::Edge(..)) => vec![
            keep(Trace::Nothing),
            Ctx {
                trace: Trace::Nothing,
                hit: true,
            },
        ],
        _ => vec![keep(t)],
    }
}

fn step(
    node: &Node,
    st: &State,
    ctx: &mut Vec<Ctx>,
    ev: Event,
    meter: &Meter,
) -> Result<State, CheckError> {
    Ok(match (node, st) {
        (Node::Const(_), s) => s.clone(),
        (Node::Atom(kind, i, j), State::Flag(f)) => {
            let (a, b) = (ctx[*i], ctx[*j]);
            let now = match kind {
                Atom::In | Atom::EqElem => a.hit && b.hit,
                Atom::EqSet => a.hit != b.hit,
                Atom::Inc => match ev {
                    Event::Edge(u, v) => {
                        a.hit && (b.trace == Trace::At(u) || b.trace == Trace::At(v))
                    }
                    _ => false,
                },
            };
            State::Flag(*f || now)
        }
        (Node::Quant { sort, body, .. }, State::Set(set)) => {
            let mut out = BTreeSet::new();
            for (t, b) in set {
                for c in options(*sort, *t, ev) {
                    meter.expand()?;
                    ctx.push(c);
                    let nb = step(body, b, ctx, ev, meter);
                    ctx.pop();
                    out.insert((c.trace, nb?));
                }
            }
            State::Set(out)
        }
        (n, State::Tuple(xs)) => State::Tuple(
            children(n)
                .into_iter()
                .zip(xs)
                .map(|(c, x)| step(c, x, ctx, ev, meter))
                .collect::<Result<_, _>>()?,
        ),
        _ => unreachable!("state shape follows the formula"),
    })
}

fn merge(a: Trace, b: Trace) -> Option<Trace> {
    use Trace::*;
    match (a, b) {
        (Unplaced, Unplaced) => Some(Unplaced),
        (At(x), At(y)) if x == y => Some(At(x)),
        (Gone, Unplaced) | (Unplaced, Gone) => Some(Gone),
        (Placed(x), Placed(y)) if !(x && y) => Some(Placed(x || y)),
        (Mask(x), Mask(y)) if x == y => Some(Mask(x)),
        (Nothing, Nothing) => Some(Nothing),
        _ => None,
    }
}

fn join(a: &State, b: &State, meter: &Meter) -> Result<State, CheckError> {
    Ok(match (a, b) {
        (State::Flag(x), State::Flag(y)) => State::Flag(*x || *y),
        (State::Tuple(xs), State::Tuple(ys)) => State::Tuple(
            xs.iter()
                .zip(ys)
                .map(|(x, y)| join(x, y, meter))
                .collect::<Result<_, _>>()?,
        ),
        (State::Set(xs), State::Set(ys)) => {
            let mut out = BTreeSet::new();
            for (tx, sx) in xs {
                for (ty, sy) in ys {
                    meter.expand()?;
                    if let Some(t) = merge(*tx, *ty) {
                        out.insert((t, join(sx, sy, meter)?));
                    }
                }
            }
            State::Set(out)
        }
        _ => unreachable!("joined states share a shape"),
    })
}

fn value(node: &Node, st: &State) -> bool {
    match (node, st) {
        (Node::Const(b), _) => *b,
        (Node::Atom(Atom::EqSet, ..), State::Flag(f)) => !f,
        (Node::Atom(_, ..), State::Flag(f)) => *f,
        (Node::Not(a), State::Tuple(x)) => !value(a, &x[0]),
        (Node::Implies(a, b), State::Tuple(x)) => !value(a, &x[0]) || value(b, &x[1]),
        (Node::And(xs), State::Tuple(s)) => xs.iter().zip(s).all(|(n, x)| value(n, x)),
        (Node::Or(xs), State::Tuple(s)) => xs.iter().zip(s).any(|(n, x)| value(n, x)),
        (Node::Quant { exists, body, .. }, State::Set(set)) => {
            let mut valid = set
                .iter()
                .filter(|(t, _)| !matches!(t, Trace::Unplaced | Trace::Placed(false)))
                .map(|(_, b)| value(body, b));
            if *exists {
                valid.any(|x| x)
            } else {
                valid.all(|x| x)
            }
        }
        _ => unreachable!("state shape follows the formula"),
    }
}

/// Evaluates a closed, transform-free formula; `td` must be valid for `g`.
pub(super) fn run(
    g: &Graph,
    f: &Formula,
    td: &NiceTreeDecomposition,
    meter: &Meter,
) -> Result<bool, CheckError> {
    let node = lower(f, &mut Vec::new())?;
    let owned = td.introduced_edges(g);
    let mut states: Vec<Option<State>> = vec![None; td.nodes.len()];
    let mut ctx = Vec::new();
    for (i, tn) in td.nodes.iter().enumerate() {
        let mut take = |c: usize| states[c].take().expect("child state computed once");
        let st = match tn.kind {
            NiceKind::Leaf => initial(&node),
            NiceKind::Introduce(v) => {
                let mut s = step(
                    &node,
                    &take(tn.children[0]),
                    &mut ctx,
                    Event::Vertex(v),
                    meter,
                )?;
                for e in owned[i].iter() {
                    let (a, b) = g.edge(e);
                    s = step(&node, &s, &mut ctx, Event::Edge(a, b), meter)?;
                }
                s
            }
            NiceKind::Forget(v) => step(
                &node,
                &take(tn.children[0]),
                &mut ctx,
                Event::Forget(v),
                meter,
            )?,
            NiceKind::Join => {
                let (a, b) = (take(tn.children[0]), take(tn.children[1]));
                join(&a, &b, meter)?
            }
        };
        states[i] = Some(st);
    }
    let root = states[td.root()].take().expect("root state");
    Ok(value(&node, &root))
}
