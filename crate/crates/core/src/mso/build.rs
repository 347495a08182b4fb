//! Standard graph properties as formulas.
//!
//! Quantifiers are nested so that each set variable is introduced next to
//! the constraints that restrict it; the first conjunct under a set
//! quantifier is often `∀x (x ∈ X → ψ)`, which evaluators may use as a
//! range bound. Apart from that ordering the formulas follow the textbook
//! constructions.

use super::{Formula, MsoError, Sort};
use crate::graph::{named, Graph};

/// Deterministic supply of bound-variable names.
#[derive(Debug, Default, Clone)]
pub struct Namer {
    next: usize,
}

impl Namer {
    pub fn new() -> Self {
        Namer::default()
    }

    pub fn fresh(&mut self, sort: Sort) -> String {
        self.next += 1;
        let stem = match sort {
            Sort::Vertex => "v",
            Sort::Edge => "e",
            Sort::VertexSet => "U",
            Sort::EdgeSet => "F",
        };
        format!("{stem}{}", self.next)
    }
}

use Formula as F;

/// `∀x (x ∈ set → body(x))`.
pub fn all_in(
    nm: &mut Namer,
    elem: Sort,
    set: &str,
    body: impl FnOnce(&str) -> Formula,
) -> Formula {
    let x = nm.fresh(elem);
    let b = body(&x);
    F::forall(elem, &x, F::implies(F::mem(&x, set), b))
}

/// `set ⊆ sup` for sets of the given element sort.
pub fn subset(nm: &mut Namer, elem: Sort, set: &str, sup: &str) -> Formula {
    all_in(nm, elem, set, |x| F::mem(x, sup))
}

/// `∃x (x ∈ set)`.
pub fn nonempty(nm: &mut Namer, elem: Sort, set: &str) -> Formula {
    let x = nm.fresh(elem);
    F::exists(elem, &x, F::mem(&x, set))
}

/// Some edge joins a vertex satisfying `left` to one satisfying `right`.
pub fn edge_between(
    nm: &mut Namer,
    left: impl FnOnce(&str) -> Formula,
    right: impl FnOnce(&str) -> Formula,
) -> Formula {
    let e = nm.fresh(Sort::Edge);
    let x = nm.fresh(Sort::Vertex);
    let y = nm.fresh(Sort::Vertex);
    let (l, r) = (left(&x), right(&y));
    F::exists(
        Sort::Edge,
        &e,
        F::exists(
            Sort::Vertex,
            &x,
            F::exists(
                Sort::Vertex,
                &y,
                F::and([F::inc(&e, &x), F::inc(&e, &y), l, r]),
            ),
        ),
    )
}

/// Exactly two objects of `sort` satisfy `prop`, written out in plain MSO.
pub fn exactly_two(nm: &mut Namer, sort: Sort, prop: impl Fn(&str) -> Formula) -> Formula {
    let a = nm.fresh(sort);
    let b = nm.fresh(sort);
    let c = nm.fresh(sort);
    F::exists(
        sort,
        &a,
        F::exists(
            sort,
            &b,
            F::and([
                F::not(F::eq(&a, &b)),
                prop(&a),
                prop(&b),
                F::forall(
                    sort,
                    &c,
                    F::implies(prop(&c), F::or([F::eq(&c, &a), F::eq(&c, &b)])),
                ),
            ]),
        ),
    )
}

fn partition(nm: &mut Namer, elem: Sort, sets: &[&str]) -> Formula {
    let x = nm.fresh(elem);
    let cover = F::or(sets.iter().map(|s| F::mem(&x, s)));
    let mut disjoint = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            disjoint.push(F::not(F::and([F::mem(&x, sets[i]), F::mem(&x, sets[j])])));
        }
    }
    F::forall(elem, &x, F::and(std::iter::once(cover).chain(disjoint)))
}

/// The vertex sets are pairwise disjoint and cover every vertex.
pub fn vertex_partition(nm: &mut Namer, sets: &[&str]) -> Formula {
    partition(nm, Sort::Vertex, sets)
}

/// The edge sets are pairwise disjoint and cover every edge.
pub fn edge_partition(nm: &mut Namer, sets: &[&str]) -> Formula {
    partition(nm, Sort::Edge, sets)
}

/// No edge has both endpoints in `set`.
pub fn independent(nm: &mut Namer, set: &str) -> Formula {
    let e = nm.fresh(Sort::Edge);
    let v = nm.fresh(Sort::Vertex);
    F::forall(
        Sort::Edge,
        &e,
        F::exists(
            Sort::Vertex,
            &v,
            F::and([F::inc(&e, &v), F::not(F::mem(&v, set))]),
        ),
    )
}

/// Proper colouring with `k` colours.
pub fn color_k(nm: &mut Namer, k: usize) -> Formula {
    let names: Vec<String> = (0..k).map(|_| nm.fresh(Sort::VertexSet)).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut body = F::and(
        std::iter::once(vertex_partition(nm, &refs)).chain(refs.iter().map(|u| independent(nm, u))),
    );
    // Each colour class may only use vertices outside the earlier classes.
    for i in (0..k).rev() {
        let earlier = &refs[..i];
        let bound = if earlier.is_empty() {
            F::True
        } else {
            all_in(nm, Sort::Vertex, refs[i], |x| {
                F::and(earlier.iter().map(|u| F::not(F::mem(x, u))))
            })
        };
        body = F::exists(Sort::VertexSet, refs[i], F::and([bound, body]));
    }
    body
}

/// Some vertex set splits the graph with no edge across.
pub fn disconnected(nm: &mut Namer) -> Formula {
    let u = nm.fresh(Sort::VertexSet);
    let a = nm.fresh(Sort::Vertex);
    let b = nm.fresh(Sort::Vertex);
    let split = F::exists(
        Sort::Vertex,
        &a,
        F::exists(
            Sort::Vertex,
            &b,
            F::and([F::mem(&a, &u), F::not(F::mem(&b, &u))]),
        ),
    );
    let cut = edge_between(nm, |x| F::mem(x, &u), |y| F::not(F::mem(y, &u)));
    F::exists(Sort::VertexSet, &u, F::and([split, F::not(cut)]))
}

pub fn connected(nm: &mut Namer) -> Formula {
    F::not(disconnected(nm))
}

/// The subgraph induced by `set` is connected (vacuously when empty).
pub fn connected_vertices(nm: &mut Namer, set: &str) -> Formula {
    let x = nm.fresh(Sort::VertexSet);
    let a = nm.fresh(Sort::Vertex);
    let b = nm.fresh(Sort::Vertex);
    let bound = subset(nm, Sort::Vertex, &x, set);
    let split = F::exists(
        Sort::Vertex,
        &a,
        F::exists(
            Sort::Vertex,
            &b,
            F::and([F::mem(&a, &x), F::mem(&b, set), F::not(F::mem(&b, &x))]),
        ),
    );
    let cut = edge_between(
        nm,
        |p| F::mem(p, &x),
        |q| F::and([F::mem(q, set), F::not(F::mem(q, &x))]),
    );
    F::not(F::exists(
        Sort::VertexSet,
        &x,
        F::and([bound, split, F::not(cut)]),
    ))
}

/// `v` is an endpoint of some edge of `set`.
pub fn touches(nm: &mut Namer, set: &str, v: &str) -> Formula {
    let e = nm.fresh(Sort::Edge);
    F::exists(Sort::Edge, &e, F::and([F::mem(&e, set), F::inc(&e, v)]))
}

/// The subgraph formed by the edges of `set` is connected.
pub fn connected_edges(nm: &mut Namer, set: &str) -> Formula {
    let x = nm.fresh(Sort::VertexSet);
    let a = nm.fresh(Sort::Vertex);
    let b = nm.fresh(Sort::Vertex);
    let (ta, tb) = (touches(nm, set, &a), touches(nm, set, &b));
    let split = F::exists(
        Sort::Vertex,
        &a,
        F::exists(
            Sort::Vertex,
            &b,
            F::and([F::mem(&a, &x), F::not(F::mem(&b, &x)), ta, tb]),
        ),
    );
    let e = nm.fresh(Sort::Edge);
    let p = nm.fresh(Sort::Vertex);
    let q = nm.fresh(Sort::Vertex);
    let cut = F::exists(
        Sort::Edge,
        &e,
        F::and([
            F::mem(&e, set),
            F::exists(
                Sort::Vertex,
                &p,
                F::exists(
                    Sort::Vertex,
                    &q,
                    F::and([
                        F::inc(&e, &p),
                        F::inc(&e, &q),
                        F::mem(&p, &x),
                        F::not(F::mem(&q, &x)),
                    ]),
                ),
            ),
        ]),
    );
    F::not(F::exists(Sort::VertexSet, &x, F::and([split, F::not(cut)])))
}

/// `h` is a minor: disjoint non-empty connected branch sets with an edge
/// between the sets of every edge of `h`.
pub fn minor_h(nm: &mut Namer, h: &Graph) -> Formula {
    let sets: Vec<String> = (0..h.n()).map(|_| nm.fresh(Sort::VertexSet)).collect();
    let mut body = F::True;
    for i in (0..h.n()).rev() {
        let earlier: Vec<&str> = sets[..i].iter().map(String::as_str).collect();
        let bound = if earlier.is_empty() {
            F::True
        } else {
            all_in(nm, Sort::Vertex, &sets[i], |x| {
                F::and(earlier.iter().map(|u| F::not(F::mem(x, u))))
            })
        };
        let links: Vec<Formula> = (0..i)
            .filter(|&j| h.has_edge(i, j))
            .map(|j| edge_between(nm, |x| F::mem(x, &sets[j]), |y| F::mem(y, &sets[i])))
            .collect();
        let parts = [
            bound,
            nonempty(nm, Sort::Vertex, &sets[i]),
            connected_vertices(nm, &sets[i]),
        ]
        .into_iter()
        .chain(links)
        .chain([body]);
        body = F::exists(Sort::VertexSet, &sets[i], F::and(parts));
    }
    body
}

pub fn planar_f(nm: &mut Namer) -> Formula {
    F::and([
        F::not(minor_h(nm, &named::complete(5))),
        F::not(minor_h(nm, &named::complete_bipartite(3, 3))),
    ])
}

pub fn outerplanar_f(nm: &mut Namer) -> Formula {
    F::and([
        F::not(minor_h(nm, &named::complete(4))),
        F::not(minor_h(nm, &named::complete_bipartite(2, 3))),
    ])
}

/// Every vertex touching `set` touches exactly two of its edges, so `set`
/// is a disjoint union of cycles.
pub fn cycle_set(nm: &mut Namer, set: &str) -> Formula {
    let v = nm.fresh(Sort::Vertex);
    let touched = touches(nm, set, &v);
    let v2 = v.clone();
    let two = exactly_two(nm, Sort::Edge, |f| F::and([F::mem(f, set), F::inc(f, &v2)]));
    F::forall(Sort::Vertex, &v, F::implies(touched, two))
}

/// Variant counting, for each edge, the other edges sharing an endpoint
/// with it. It accepts a claw `K1,3` as a "cycle", so the library uses
/// [`cycle_set`]; this form is kept for comparison.
pub fn cycle_set_by_adjacent_edges(nm: &mut Namer, set: &str) -> Formula {
    let e = nm.fresh(Sort::Edge);
    let w = nm.fresh(Sort::Vertex);
    let e2 = e.clone();
    let w2 = w.clone();
    let two = exactly_two(nm, Sort::Edge, |f| {
        F::and([
            F::mem(f, set),
            F::not(F::eq(&e2, f)),
            F::exists(
                Sort::Vertex,
                &w2,
                F::and([F::inc(&e2, &w2), F::inc(f, &w2)]),
            ),
        ])
    });
    F::forall(Sort::Edge, &e, F::implies(F::mem(&e, set), two))
}

/// `set` is the edge set of a single cycle.
pub fn cycle(nm: &mut Namer, set: &str) -> Formula {
    F::and([
        nonempty(nm, Sort::Edge, set),
        cycle_set(nm, set),
        connected_edges(nm, set),
    ])
}

/// Every vertex is an endpoint of some edge of `set`.
pub fn span(nm: &mut Namer, set: &str) -> Formula {
    let v = nm.fresh(Sort::Vertex);
    let t = touches(nm, set, &v);
    F::forall(Sort::Vertex, &v, t)
}

pub fn hamiltonian(nm: &mut Namer) -> Formula {
    let f = nm.fresh(Sort::EdgeSet);
    let s = span(nm, &f);
    let c = cycle(nm, &f);
    F::exists(Sort::EdgeSet, &f, F::and([s, c]))
}

/// Names accepted by [`build_basic`].
pub const BASIC_NAMES: &[&str] = &[
    "vertex-partition-<k>",
    "edge-partition-<k>",
    "color-<k>",
    "disconnected",
    "connected",
    "connected-vertices",
    "connected-edges",
    "minor-K3",
    "minor-K4",
    "minor-K5",
    "minor-K2,3",
    "minor-K3,3",
    "planar",
    "outerplanar",
    "cycle-set",
    "cycle",
    "span",
    "hamiltonian",
    "exactly-two",
];

fn named_graph(spec: &str) -> Option<Graph> {
    let rest = spec.strip_prefix('K')?;
    match rest.split_once(',') {
        Some((a, b)) => Some(named::complete_bipartite(a.parse().ok()?, b.parse().ok()?)),
        None => Some(named::complete(rest.parse().ok()?)),
    }
}

/// Builds a library formula by name. Parameterised formulas use free
/// variables `!U`, `!F`, `!X1`, … as noted in [`BASIC_NAMES`].
pub fn build_basic(name: &str) -> Result<Formula, MsoError> {
    let nm = &mut Namer::new();
    let unknown = || MsoError::UnknownBuilder(name.to_string());
    let count = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix)?.parse().ok() };
    if let Some(k) = count("vertex-partition-") {
        let sets: Vec<String> = (1..=k).map(|i| format!("!X{i}")).collect();
        return Ok(vertex_partition(
            nm,
            &sets.iter().map(String::as_str).collect::<Vec<_>>(),
        ));
    }
    if let Some(k) = count("edge-partition-") {
        let sets: Vec<String> = (1..=k).map(|i| format!("!X{i}")).collect();
        return Ok(edge_partition(
            nm,
            &sets.iter().map(String::as_str).collect::<Vec<_>>(),
        ));
    }
    if let Some(k) = count("color-") {
        return Ok(color_k(nm, k));
    }
    if let Some(h) = name.strip_prefix("minor-") {
        let h = named_graph(h).filter(|h| h.n() <= 6).ok_or_else(unknown)?;
        return Ok(minor_h(nm, &h));
    }
    Ok(match name {
        "disconnected" => disconnected(nm),
        "connected" => connected(nm),
        "connected-vertices" => connected_vertices(nm, "!U"),
        "connected-edges" => connected_edges(nm, "!F"),
        "planar" => planar_f(nm),
        "outerplanar" => outerplanar_f(nm),
        "cycle-set" => cycle_set(nm, "!F"),
        "cycle" => cycle(nm, "!F"),
        "span" => span(nm, "!F"),
        "hamiltonian" => hamiltonian(nm),
        "exactly-two" => exactly_two(nm, Sort::Edge, |e| F::mem(e, "!F")),
        _ => return Err(unknown()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::{check_sorts, free_variables, parse_formula};
    use std::collections::BTreeMap;

    fn library() -> Vec<Formula> {
        let mut names: Vec<String> = BASIC_NAMES
            .iter()
            .filter(|n| !n.contains('<'))
            .map(|n| n.to_string())
            .collect();
        names.extend(
            [
                "vertex-partition-3",
                "edge-partition-2",
                "color-2",
                "color-3",
            ]
            .map(String::from),
        );
        names.iter().map(|n| build_basic(n).unwrap()).collect()
    }

    #[test]
    fn library_is_well_sorted_and_round_trips() {
        for f in library() {
            check_sorts(&f, &BTreeMap::new(), true).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn closed_where_expected() {
        for name in [
            "hamiltonian",
            "planar",
            "outerplanar",
            "connected",
            "color-3",
            "minor-K4",
        ] {
            assert!(
                free_variables(&build_basic(name).unwrap())
                    .unwrap()
                    .is_empty(),
                "{name}"
            );
        }
        let free = free_variables(&build_basic("cycle").unwrap()).unwrap();
        assert_eq!(free.get("!F"), Some(&Sort::EdgeSet));
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(
            build_basic("minor-K9"),
            Err(MsoError::UnknownBuilder(_))
        ));
        assert!(matches!(
            build_basic("frobnicate"),
            Err(MsoError::UnknownBuilder(_))
        ));
    }
}
