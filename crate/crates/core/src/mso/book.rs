//! Formulas for bounded 1-page and 2-page crossing numbers.
//!
//! `onepage_k` is a disjunction over 1-page crossing diagrams of a formula
//! guessing the crossed edges, their endpoints in circular order, and a split
//! of the remaining vertices into the arcs between consecutive endpoints.
//! `twopage` guesses the page split and, per page, the boundary cycles of the
//! regions cut off from the spine, the chords inside them and the remaining
//! isthmus edges. `zeta_k` applies the same idea to the planarization along
//! a 2-page crossing diagram.

use super::build::{
    all_in, connected_edges, cycle, edge_between, exactly_two, outerplanar_f, planar_f, touches,
    Namer,
};
use super::{relativize, relativize_edges, Formula, MsoError, Sort, Transform};
use crate::bookdraw::{enumerate_crossing_diagrams, interleaved, CrossingDiagram};

use Formula as F;

pub const DEFAULT_ONEPAGE_MAX_K: usize = 2;
pub const DEFAULT_ZETA_MAX_K: usize = 1;

fn vset(vs: &[&str], x: &str) -> Formula {
    F::or(vs.iter().map(|v| F::eq(x, v)))
}

/// Every vertex of `w` is an endpoint of some edge of `f` (set form).
pub fn theta1(nm: &mut Namer, w: &str, f: &str) -> Formula {
    let v = nm.fresh(Sort::Vertex);
    let t = touches(nm, f, &v);
    F::forall(Sort::Vertex, &v, F::implies(F::mem(&v, w), t))
}

/// Every edge with both endpoints in `w` belongs to `f` (set form).
pub fn theta2(nm: &mut Namer, f: &str, w: &str) -> Formula {
    let e = nm.fresh(Sort::Edge);
    let v = nm.fresh(Sort::Vertex);
    F::forall(
        Sort::Edge,
        &e,
        F::implies(
            F::forall(Sort::Vertex, &v, F::implies(F::inc(&e, &v), F::mem(&v, w))),
            F::mem(&e, f),
        ),
    )
}

/// No edge joins `ui` and `uj`.
pub fn theta3(nm: &mut Namer, ui: &str, uj: &str) -> Formula {
    F::not(edge_between(nm, |x| F::mem(x, ui), |y| F::mem(y, uj)))
}

/// Outerplanarity of `G[u ∪ {a, b}]` with `a` and `b` merged.
pub fn theta4_identify(nm: &mut Namer, u: &str, a: &str, b: &str) -> Formula {
    let body = relativize(&outerplanar_f(nm), u, &[a, b]).expect("fresh names");
    F::Interpreted {
        transform: Transform::Identify,
        args: vec![a.into(), b.into()],
        binds: vec![],
        body: Box::new(body),
    }
}

/// Outerplanarity of `G[u ∪ {a, b}]` plus a new vertex adjacent to `a` and
/// `b`; equivalently, an outerplanar embedding with `a` and `b` next to each
/// other on the outer face.
pub fn theta4_ear(nm: &mut Namer, u: &str, a: &str, b: &str) -> Formula {
    let z = nm.fresh(Sort::Vertex);
    let body = relativize(&outerplanar_f(nm), u, &[a, b, &z]).expect("fresh names");
    F::Interpreted {
        transform: Transform::Ear,
        args: vec![a.into(), b.into()],
        binds: vec![z],
        body: Box::new(body),
    }
}

/// The four per-piece conditions with free variables as named in `args`:
/// 1: `(W F)`, 2: `(F W)`, 3: `(Ui Uj)`, 4: `(U a b)` (merging form).
pub fn theta_1page(i: usize, args: &[&str]) -> Result<Formula, MsoError> {
    let nm = &mut Namer::new();
    let need = if i == 4 { 3 } else { 2 };
    if args.len() != need {
        return Err(MsoError::Arity(format!(
            "theta {i} takes {need} arguments, got {}",
            args.len()
        )));
    }
    Ok(match i {
        1 => theta1(nm, args[0], args[1]),
        2 => theta2(nm, args[0], args[1]),
        3 => theta3(nm, args[0], args[1]),
        4 => theta4_identify(nm, args[0], args[1], args[2]),
        _ => return Err(MsoError::UnknownBuilder(format!("theta {i}"))),
    })
}

/// The named vertices and edges form the configuration `d`: distinct
/// vertices, distinct edges, and segment `j` joining its two points.
pub fn build_alpha(d: &CrossingDiagram, vs: &[&str], es: &[&str]) -> Result<Formula, MsoError> {
    if vs.len() != d.points || es.len() != d.segments.len() {
        return Err(MsoError::Arity(format!(
            "diagram has {} points and {} segments, got {} and {} variables",
            d.points,
            d.segments.len(),
            vs.len(),
            es.len()
        )));
    }
    let mut parts = Vec::new();
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            parts.push(F::not(F::eq(a, b)));
        }
    }
    for (i, a) in es.iter().enumerate() {
        for b in &es[i + 1..] {
            parts.push(F::not(F::eq(a, b)));
        }
    }
    for (j, &(a, b)) in d.segments.iter().enumerate() {
        parts.push(F::inc(es[j], vs[a]));
        parts.push(F::inc(es[j], vs[b]));
    }
    Ok(F::and(parts))
}

/// Chords between points of `d` that are not segments and cross no segment.
fn free_chords(d: &CrossingDiagram) -> Vec<(usize, usize)> {
    let p = d.points;
    (0..p)
        .flat_map(|a| (a + 1..p).map(move |b| (a, b)))
        .filter(|c| !d.segments.contains(c))
        .filter(|&(a, b)| d.segments.iter().all(|&(c, e)| !interleaved(a, b, c, e)))
        .collect()
}

/// One disjunct of `onepage_k`: `G` has a 1-page drawing whose crossed edges
/// form the configuration `d`.
///
/// Edges among the points other than the segments must be chords crossing
/// nothing, and vertices off the points sit in the arcs between cyclically
/// consecutive points, attached only to the two points bounding their arc.
pub fn build_beta(nm: &mut Namer, d: &CrossingDiagram) -> Formula {
    let p = d.points;
    let vs: Vec<String> = (0..p).map(|_| nm.fresh(Sort::Vertex)).collect();
    let es: Vec<String> = d.segments.iter().map(|_| nm.fresh(Sort::Edge)).collect();
    let us: Vec<String> = (0..p).map(|_| nm.fresh(Sort::VertexSet)).collect();
    let v: Vec<&str> = vs.iter().map(String::as_str).collect();
    let e: Vec<&str> = es.iter().map(String::as_str).collect();
    let alpha = build_alpha(d, &v, &e).expect("matching arity");

    // θ1 with W and F given as explicit tuples.
    let x = nm.fresh(Sort::Vertex);
    let f = nm.fresh(Sort::Edge);
    let th1 = F::forall(
        Sort::Vertex,
        &x,
        F::implies(
            vset(&v, &x),
            F::exists(Sort::Edge, &f, F::and([vset(&e, &f), F::inc(&f, &x)])),
        ),
    );
    // θ2: edges inside W are segments or crossing-free chords, and no two
    // such chords cross each other.
    let free = free_chords(d);
    let y = nm.fresh(Sort::Edge);
    let w = nm.fresh(Sort::Vertex);
    let inside = F::forall(Sort::Vertex, &w, F::implies(F::inc(&y, &w), vset(&v, &w)));
    let allowed = F::or(
        std::iter::once(vset(&e, &y)).chain(
            free.iter()
                .map(|&(a, b)| F::and([F::inc(&y, v[a]), F::inc(&y, v[b])])),
        ),
    );
    let mut th2 = vec![F::forall(Sort::Edge, &y, F::implies(inside, allowed))];
    for (i, &(a, b)) in free.iter().enumerate() {
        for &(c, dd) in &free[i + 1..] {
            if interleaved(a, b, c, dd) {
                let adj = |nm: &mut Namer, s: &str, t: &str| {
                    let h = nm.fresh(Sort::Edge);
                    F::exists(Sort::Edge, &h, F::and([F::inc(&h, s), F::inc(&h, t)]))
                };
                th2.push(F::not(F::and([adj(nm, v[a], v[b]), adj(nm, v[c], v[dd])])));
            }
        }
    }

    // Arc sets, nested so that each ranges over the vertices still free.
    let mut body = F::True;
    for i in (0..p).rev() {
        let earlier: Vec<&str> = us[..i].iter().map(String::as_str).collect();
        let outside = |x: &str| {
            F::and(
                v.iter()
                    .map(|w| F::not(F::eq(x, w)))
                    .chain(earlier.iter().map(|u| F::not(F::mem(x, u)))),
            )
        };
        let upper = all_in(nm, Sort::Vertex, &us[i], |x| outside(x));
        let lower = if i + 1 == p {
            let z = nm.fresh(Sort::Vertex);
            F::forall(
                Sort::Vertex,
                &z,
                F::implies(outside(&z), F::mem(&z, &us[i])),
            )
        } else {
            F::True
        };
        let mut parts = vec![upper, lower];
        for u in &earlier {
            parts.push(theta3(nm, &us[i], u));
        }
        for (j, vj) in v.iter().enumerate() {
            if j != i && j != (i + 1) % p {
                parts.push(F::not(edge_between(
                    nm,
                    |s| F::mem(s, &us[i]),
                    |t| F::eq(t, vj),
                )));
            }
        }
        parts.push(theta4_ear(nm, &us[i], v[i], v[(i + 1) % p]));
        parts.push(body);
        body = F::exists(Sort::VertexSet, &us[i], F::and(parts));
    }

    let mut f = F::and(std::iter::once(alpha).chain([th1]).chain(th2).chain([body]));
    for name in es.iter().rev() {
        f = F::exists(Sort::Edge, name, f);
    }
    for name in vs.iter().rev() {
        f = F::exists(Sort::Vertex, name, f);
    }
    f
}

/// `onepage_k`: 1-page crossing number at most `k`.
pub fn build_onepage(k: usize) -> Result<Formula, MsoError> {
    build_onepage_with_limit(k, DEFAULT_ONEPAGE_MAX_K)
}

pub fn build_onepage_with_limit(k: usize, limit: usize) -> Result<Formula, MsoError> {
    if k > limit {
        return Err(MsoError::KOverLimit { k, limit });
    }
    let nm = &mut Namer::new();
    let mut parts = vec![outerplanar_f(nm)];
    for j in 1..=k {
        let ds =
            enumerate_crossing_diagrams(j, 1).map_err(|_| MsoError::KOverLimit { k, limit })?;
        for d in &ds {
            parts.push(build_beta(nm, d));
        }
    }
    Ok(F::or(parts))
}

// ---------------------------------------------------------------------------
// Two pages.

/// `∀x (x ∈ set → body(x))` where the body needs fresh names.
fn each_in(
    nm: &mut Namer,
    elem: Sort,
    set: &str,
    body: impl FnOnce(&mut Namer, &str) -> Formula,
) -> Formula {
    let x = nm.fresh(elem);
    let b = body(nm, &x);
    F::forall(elem, &x, F::implies(F::mem(&x, set), b))
}

/// `∀ C ⊆ sup` (or `∃`), with `C` a cycle, continuing with `body(C)`.
fn cycles_in(
    nm: &mut Namer,
    exists: bool,
    sup: &[&str],
    body: impl FnOnce(&mut Namer, &str) -> Formula,
) -> Formula {
    let c = nm.fresh(Sort::EdgeSet);
    let bound = all_in(nm, Sort::Edge, &c, |x| {
        F::or(sup.iter().map(|s| F::mem(x, s)))
    });
    let is_cycle = cycle(nm, &c);
    let rest = body(nm, &c);
    if exists {
        F::exists(Sort::EdgeSet, &c, F::and([bound, is_cycle, rest]))
    } else {
        F::forall(
            Sort::EdgeSet,
            &c,
            F::implies(F::and([bound, is_cycle]), rest),
        )
    }
}

/// `xc` is a union of cycles any two of which share no edge, i.e. every
/// edge of `xc` lies on exactly one cycle inside `xc`.
pub fn cactus(nm: &mut Namer, xc: &str) -> Formula {
    let on_cycle = each_in(nm, Sort::Edge, xc, |nm, e| {
        let e = e.to_string();
        cycles_in(nm, true, &[xc], move |_, c| F::mem(&e, c))
    });
    let unique = cycles_in(nm, false, &[xc], |nm, c1| {
        let c1 = c1.to_string();
        cycles_in(nm, false, &[xc], move |nm, c2| {
            let e = nm.fresh(Sort::Edge);
            let f = nm.fresh(Sort::Edge);
            F::implies(
                F::exists(Sort::Edge, &e, F::and([F::mem(&e, &c1), F::mem(&e, c2)])),
                F::forall(
                    Sort::Edge,
                    &f,
                    F::and([
                        F::implies(F::mem(&f, &c1), F::mem(&f, c2)),
                        F::implies(F::mem(&f, c2), F::mem(&f, &c1)),
                    ]),
                ),
            )
        })
    });
    F::and([on_cycle, unique])
}

/// No cycle inside `xc ∪ xb` uses an edge of `xb`.
pub fn isthmus_edges(nm: &mut Namer, xb: &str, xc: &str) -> Formula {
    F::not(cycles_in(nm, true, &[xc, xb], |nm, c| {
        let e = nm.fresh(Sort::Edge);
        F::exists(Sort::Edge, &e, F::and([F::mem(&e, c), F::mem(&e, xb)]))
    }))
}

/// Both endpoints of every edge of `xi` lie on one cycle inside `xc`.
pub fn chords_on_cycles(nm: &mut Namer, xi: &str, xc: &str) -> Formula {
    each_in(nm, Sort::Edge, xi, |nm, e| {
        let e = e.to_string();
        cycles_in(nm, true, &[xc], move |nm, c| {
            let v = nm.fresh(Sort::Vertex);
            let t = touches(nm, c, &v);
            F::forall(Sort::Vertex, &v, F::implies(F::inc(&e, &v), t))
        })
    })
}

/// The subgraph formed by the edges of `x` is outerplanar.
pub fn page_outerplanar(nm: &mut Namer, x: &str) -> Formula {
    relativize_edges(&outerplanar_f(nm), x).expect("fresh names")
}

/// `p` is the edge set of a path with distinct end vertices `a` and `b`.
pub fn path_between(nm: &mut Namer, p: &str, a: &str, b: &str) -> Formula {
    let v = nm.fresh(Sort::Vertex);
    let tv = touches(nm, p, &v);
    let at_v = |f: &str| F::and([F::mem(f, p), F::inc(f, &v)]);
    let g = nm.fresh(Sort::Edge);
    let h = nm.fresh(Sort::Edge);
    let one = F::exists(
        Sort::Edge,
        &g,
        F::and([
            at_v(&g),
            F::forall(Sort::Edge, &h, F::implies(at_v(&h), F::eq(&h, &g))),
        ]),
    );
    let two = exactly_two(nm, Sort::Edge, at_v);
    let degrees = F::forall(
        Sort::Vertex,
        &v,
        F::implies(
            tv,
            F::and([
                F::implies(F::or([F::eq(&v, a), F::eq(&v, b)]), one),
                F::implies(F::not(F::or([F::eq(&v, a), F::eq(&v, b)])), two),
            ]),
        ),
    );
    let (ta, tb) = (touches(nm, p, a), touches(nm, p, b));
    F::and([F::not(F::eq(a, b)), ta, tb, degrees, connected_edges(nm, p)])
}

/// `a, b, c, d` are distinct vertices of the cycle `c` and `{a, b}`
/// separates `c` from `d` along it.
pub fn crossing_on(nm: &mut Namer, cyc: &str, a: &str, b: &str, c: &str, d: &str) -> Formula {
    let mut parts = Vec::new();
    let pts = [a, b, c, d];
    for (i, x) in pts.iter().enumerate() {
        parts.push(touches(nm, cyc, x));
        for y in &pts[i + 1..] {
            parts.push(F::not(F::eq(x, y)));
        }
    }
    let q = nm.fresh(Sort::EdgeSet);
    let bound = all_in(nm, Sort::Edge, &q, |x| F::mem(x, cyc));
    let path = path_between(nm, &q, c, d);
    let (ta, tb) = (touches(nm, &q, a), touches(nm, &q, b));
    parts.push(F::not(F::exists(
        Sort::EdgeSet,
        &q,
        F::and([bound, path, F::not(ta), F::not(tb)]),
    )));
    F::and(parts)
}

/// Which paths may take part in a crossing pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathRule {
    /// A path may not consist of a single edge of the chord set.
    NotSingleChord,
    /// A path may not use any edge of the chord set.
    AvoidChords,
}

/// No two vertex-disjoint paths, with interiors off the cycle and obeying
/// `rule` with respect to `xi`, join two pairs of cycle vertices in crossing
/// position; checked for every cycle inside `xc`.
pub fn no_crossing_paths(nm: &mut Namer, xc: &str, xi: &str, rule: PathRule) -> Formula {
    cycles_in(nm, false, &[xc], |nm, c| {
        let ends: Vec<String> = (0..4).map(|_| nm.fresh(Sort::Vertex)).collect();
        let ps: Vec<String> = (0..2).map(|_| nm.fresh(Sort::EdgeSet)).collect();
        let cross = crossing_on(nm, c, &ends[0], &ends[1], &ends[2], &ends[3]);
        let mut parts = vec![
            path_between(nm, &ps[0], &ends[0], &ends[1]),
            path_between(nm, &ps[1], &ends[2], &ends[3]),
        ];
        let v = nm.fresh(Sort::Vertex);
        let (t0, t1) = (touches(nm, &ps[0], &v), touches(nm, &ps[1], &v));
        parts.push(F::not(F::exists(Sort::Vertex, &v, F::and([t0, t1]))));
        for p in &ps {
            let w = nm.fresh(Sort::Vertex);
            let tp = touches(nm, p, &w);
            let tc = touches(nm, c, &w);
            let not_end = F::and(ends.iter().map(|x| F::not(F::eq(&w, x))));
            parts.push(F::forall(
                Sort::Vertex,
                &w,
                F::implies(F::and([tp, not_end]), F::not(tc)),
            ));
            parts.push(match rule {
                PathRule::NotSingleChord => {
                    let e = nm.fresh(Sort::Edge);
                    let f = nm.fresh(Sort::Edge);
                    F::not(F::exists(
                        Sort::Edge,
                        &e,
                        F::and([
                            F::mem(&e, xi),
                            F::forall(
                                Sort::Edge,
                                &f,
                                F::and([
                                    F::implies(F::mem(&f, p), F::eq(&f, &e)),
                                    F::implies(F::eq(&f, &e), F::mem(&f, p)),
                                ]),
                            ),
                        ]),
                    ))
                }
                PathRule::AvoidChords => {
                    let e = nm.fresh(Sort::Edge);
                    F::not(F::exists(
                        Sort::Edge,
                        &e,
                        F::and([F::mem(&e, p), F::mem(&e, xi)]),
                    ))
                }
            });
        }
        let mut inner = F::and(parts);
        for p in ps.iter().rev() {
            inner = F::exists(Sort::EdgeSet, p, inner);
        }
        let mut f = F::and([cross, inner]);
        for x in ends.iter().rev() {
            f = F::exists(Sort::Vertex, x, f);
        }
        F::not(f)
    })
}

/// Splits the edge sets into complementary `a` and `b`, then `inner`.
fn split_pages(
    nm: &mut Namer,
    a_bound: Option<(&str, &str)>,
    inner: impl FnOnce(&mut Namer, &str, &str) -> Formula,
) -> Formula {
    let a = nm.fresh(Sort::EdgeSet);
    let b = nm.fresh(Sort::EdgeSet);
    let mut a_parts = Vec::new();
    if let Some((must, never)) = a_bound {
        a_parts.push(all_in(nm, Sort::Edge, &a, |x| F::not(F::mem(x, never))));
        let x = nm.fresh(Sort::Edge);
        a_parts.push(F::forall(
            Sort::Edge,
            &x,
            F::implies(F::mem(&x, must), F::mem(&x, &a)),
        ));
    }
    let b_upper = all_in(nm, Sort::Edge, &b, |x| F::not(F::mem(x, &a)));
    let y = nm.fresh(Sort::Edge);
    let b_lower = F::forall(
        Sort::Edge,
        &y,
        F::implies(F::not(F::mem(&y, &a)), F::mem(&y, &b)),
    );
    let body = inner(nm, &a, &b);
    a_parts.push(F::exists(
        Sort::EdgeSet,
        &b,
        F::and([b_upper, b_lower, body]),
    ));
    F::exists(Sort::EdgeSet, &a, F::and(a_parts))
}

/// `xc ⊆ x`, `xi ⊆ x ∖ xc`, `xb = x ∖ (xc ∪ xi)`, then `body(xc, xi, xb)`.
fn page_sets(
    nm: &mut Namer,
    x: &str,
    first: impl FnOnce(&mut Namer, &str) -> Formula,
    second: impl FnOnce(&mut Namer, &str, &str) -> Formula,
    third: impl FnOnce(&mut Namer, &str, &str, &str) -> Formula,
) -> Formula {
    let xc = nm.fresh(Sort::EdgeSet);
    let xi = nm.fresh(Sort::EdgeSet);
    let xb = nm.fresh(Sort::EdgeSet);
    let c_bound = all_in(nm, Sort::Edge, &xc, |e| F::mem(e, x));
    let i_bound = all_in(nm, Sort::Edge, &xi, |e| {
        F::and([F::mem(e, x), F::not(F::mem(e, &xc))])
    });
    let rest = |e: &str| F::and([F::mem(e, x), F::not(F::mem(e, &xc)), F::not(F::mem(e, &xi))]);
    let b_upper = all_in(nm, Sort::Edge, &xb, |e| rest(e));
    let z = nm.fresh(Sort::Edge);
    let b_lower = F::forall(Sort::Edge, &z, F::implies(rest(&z), F::mem(&z, &xb)));
    let p1 = first(nm, &xc);
    let p2 = second(nm, &xc, &xi);
    let p3 = third(nm, &xc, &xi, &xb);
    F::exists(
        Sort::EdgeSet,
        &xc,
        F::and([
            c_bound,
            p1,
            F::exists(
                Sort::EdgeSet,
                &xi,
                F::and([
                    i_bound,
                    p2,
                    F::exists(Sort::EdgeSet, &xb, F::and([b_upper, b_lower, p3])),
                ]),
            ),
        ]),
    )
}

/// The conditions on one page `x` of a 2-page embedding.
pub fn page(nm: &mut Namer, x: &str) -> Formula {
    let op = page_outerplanar(nm, x);
    let sets = page_sets(
        nm,
        x,
        |nm, xc| cactus(nm, xc),
        |nm, xc, xi| chords_on_cycles(nm, xi, xc),
        |nm, xc, xi, xb| {
            F::and([
                isthmus_edges(nm, xb, xc),
                no_crossing_paths(nm, xc, xi, PathRule::NotSingleChord),
            ])
        },
    );
    F::and([op, sets])
}

fn separate_planar(nm: &mut Namer, a: &str, b: &str) -> Formula {
    F::Interpreted {
        transform: Transform::Separate,
        args: vec![a.into(), b.into()],
        binds: vec![],
        body: Box::new(planar_f(nm)),
    }
}

/// `twopage`: the graph has a crossing-free 2-page book embedding.
///
/// The leading planarity test is implied by the separated-graph condition
/// (contracting the copy edges of a planar separated graph gives `G`); it
/// only lets evaluators stop early.
pub fn build_twopage() -> Formula {
    let nm = &mut Namer::new();
    let planar = planar_f(nm);
    let split = split_pages(nm, None, |nm, a, b| {
        F::and([page(nm, a), page(nm, b), separate_planar(nm, a, b)])
    });
    F::and([planar, split])
}

// ---------------------------------------------------------------------------
// Planarized drawings.

/// Every vertex of `xv` touched by `p` has all its edges in `p`.
fn closed_at(nm: &mut Namer, p: &str, xv: &str) -> Formula {
    let v = nm.fresh(Sort::Vertex);
    let f = nm.fresh(Sort::Edge);
    let tv = touches(nm, p, &v);
    F::forall(
        Sort::Vertex,
        &v,
        F::implies(
            F::and([F::mem(&v, xv), tv]),
            F::forall(Sort::Edge, &f, F::implies(F::inc(&f, &v), F::mem(&f, p))),
        ),
    )
}

/// `p` is the least edge set containing `e` that includes every edge at
/// each of its vertices from `xv`: `e` together with everything reachable
/// from it through crossing vertices.
pub fn piece_of(nm: &mut Namer, p: &str, e: &str, xv: &str) -> Formula {
    let q = nm.fresh(Sort::EdgeSet);
    let closed_p = closed_at(nm, p, xv);
    let closed_q = closed_at(nm, &q, xv);
    let sub = all_in(nm, Sort::Edge, p, |x| F::mem(x, &q));
    let least = F::forall(
        Sort::EdgeSet,
        &q,
        F::implies(F::and([F::mem(e, &q), closed_q]), sub),
    );
    F::and([F::mem(e, p), closed_p, least])
}

/// `p` is the piece of `e`, its vertices outside `xv` lie on the cycle `c`,
/// and it meets `c` in at least two vertices.
pub fn crossing_piece(nm: &mut Namer, p: &str, e: &str, c: &str, xv: &str) -> Formula {
    let least = piece_of(nm, p, e, xv);
    let w = nm.fresh(Sort::Vertex);
    let (tw, tc) = (touches(nm, p, &w), touches(nm, c, &w));
    let onto = F::forall(
        Sort::Vertex,
        &w,
        F::implies(tw, F::or([F::mem(&w, xv), tc])),
    );
    let a = nm.fresh(Sort::Vertex);
    let b = nm.fresh(Sort::Vertex);
    let meets: Vec<Formula> = [&a, &b]
        .iter()
        .flat_map(|x| [touches(nm, p, x), touches(nm, c, x)])
        .collect();
    let two = F::exists(
        Sort::Vertex,
        &a,
        F::exists(
            Sort::Vertex,
            &b,
            F::and(std::iter::once(F::not(F::eq(&a, &b))).chain(meets)),
        ),
    );
    F::and([least, onto, two])
}

/// Every edge of `xi` lies in a crossing piece over some cycle of `xc`.
pub fn chords_through_crossings(nm: &mut Namer, xi: &str, xc: &str, xv: &str) -> Formula {
    each_in(nm, Sort::Edge, xi, |nm, e| {
        let e = e.to_string();
        cycles_in(nm, true, &[xc], move |nm, c| {
            let p = nm.fresh(Sort::EdgeSet);
            let piece = crossing_piece(nm, &p, &e, c, xv);
            F::exists(Sort::EdgeSet, &p, piece)
        })
    })
}

/// Crossing pieces of two edges of `xi` that share no edge never have
/// vertex pairs in crossing position on a common cycle of `xc`.
pub fn pieces_do_not_cross(nm: &mut Namer, xi: &str, xc: &str, xv: &str) -> Formula {
    let e = nm.fresh(Sort::Edge);
    let f = nm.fresh(Sort::Edge);
    let clash = cycles_in(nm, true, &[xc], |nm, c| {
        let pe = nm.fresh(Sort::EdgeSet);
        let pf = nm.fresh(Sort::EdgeSet);
        let ends: Vec<String> = (0..4).map(|_| nm.fresh(Sort::Vertex)).collect();
        let g = nm.fresh(Sort::Edge);
        let mut parts = vec![
            crossing_piece(nm, &pe, &e, c, xv),
            crossing_piece(nm, &pf, &f, c, xv),
            F::not(F::exists(
                Sort::Edge,
                &g,
                F::and([F::mem(&g, &pe), F::mem(&g, &pf)]),
            )),
        ];
        for (i, x) in ends.iter().enumerate() {
            parts.push(touches(nm, if i < 2 { &pe } else { &pf }, x));
        }
        parts.push(crossing_on(nm, c, &ends[0], &ends[1], &ends[2], &ends[3]));
        let mut inner = F::and(parts);
        for x in ends.iter().rev() {
            inner = F::exists(Sort::Vertex, x, inner);
        }
        F::exists(Sort::EdgeSet, &pe, F::exists(Sort::EdgeSet, &pf, inner))
    });
    F::forall(
        Sort::Edge,
        &e,
        F::forall(
            Sort::Edge,
            &f,
            F::implies(F::and([F::mem(&e, xi), F::mem(&f, xi)]), F::not(clash)),
        ),
    )
}

/// The conditions on the planarized graph, with `xv` the crossing vertices
/// and `p0`/`p1` the new edges on the first/second page.
pub fn planarized_pages(nm: &mut Namer, xv: &str, p0: &str, p1: &str) -> Formula {
    let planar = planar_f(nm);
    let split = split_pages(nm, Some((p0, p1)), |nm, a, b| {
        let mut pages = Vec::new();
        for x in [a, b] {
            pages.push(page_sets(
                nm,
                x,
                |nm, xc| cactus(nm, xc),
                |nm, xc, xi| chords_through_crossings(nm, xi, xc, xv),
                |nm, xc, xi, xb| {
                    F::and([
                        isthmus_edges(nm, xb, xc),
                        pieces_do_not_cross(nm, xi, xc, xv),
                        no_crossing_paths(nm, xc, xi, PathRule::AvoidChords),
                    ])
                },
            ));
        }
        pages.push(separate_planar(nm, a, b));
        F::and(pages)
    });
    F::and([planar, split])
}

/// One disjunct of `zeta_k`: the configuration `d` on chosen vertices and
/// edges, then the planarized conditions on the rewritten graph.
pub fn build_gamma(nm: &mut Namer, d: &CrossingDiagram) -> Formula {
    let vs: Vec<String> = (0..d.points).map(|_| nm.fresh(Sort::Vertex)).collect();
    let es: Vec<String> = d.segments.iter().map(|_| nm.fresh(Sort::Edge)).collect();
    let v: Vec<&str> = vs.iter().map(String::as_str).collect();
    let e: Vec<&str> = es.iter().map(String::as_str).collect();
    let alpha = build_alpha(d, &v, &e).expect("matching arity");
    let binds = vec![
        nm.fresh(Sort::VertexSet),
        nm.fresh(Sort::EdgeSet),
        nm.fresh(Sort::EdgeSet),
    ];
    let body = planarized_pages(nm, &binds[0], &binds[1], &binds[2]);
    let node = F::Interpreted {
        transform: Transform::Planarize(d.clone()),
        args: vs.iter().chain(&es).cloned().collect(),
        binds,
        body: Box::new(body),
    };
    let mut f = F::and([alpha, node]);
    for name in es.iter().rev() {
        f = F::exists(Sort::Edge, name, f);
    }
    for name in vs.iter().rev() {
        f = F::exists(Sort::Vertex, name, f);
    }
    f
}

/// `zeta_k`: 2-page crossing number at most `k`.
pub fn build_zeta(k: usize) -> Result<Formula, MsoError> {
    build_zeta_with_limit(k, DEFAULT_ZETA_MAX_K)
}

pub fn build_zeta_with_limit(k: usize, limit: usize) -> Result<Formula, MsoError> {
    if k > limit {
        return Err(MsoError::KOverLimit { k, limit });
    }
    let mut parts = vec![build_twopage()];
    let nm = &mut Namer::new();
    for j in 1..=k {
        let ds =
            enumerate_crossing_diagrams(j, 2).map_err(|_| MsoError::KOverLimit { k, limit })?;
        for d in &ds {
            parts.push(build_gamma(nm, d));
        }
    }
    Ok(F::or(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::{check_sorts, free_variables, parse_formula};
    use std::collections::BTreeMap;

    #[test]
    fn builders_are_closed_and_round_trip() {
        for f in [
            build_onepage(0).unwrap(),
            build_onepage(1).unwrap(),
            build_twopage(),
            build_zeta(1).unwrap(),
        ] {
            assert!(free_variables(&f).unwrap().is_empty());
            check_sorts(&f, &BTreeMap::new(), true).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(build_onepage(3), Err(MsoError::KOverLimit { .. })));
        assert!(matches!(build_zeta(2), Err(MsoError::KOverLimit { .. })));
    }

    #[test]
    fn alpha_shapes() {
        let d = CrossingDiagram {
            points: 4,
            segments: vec![(0, 2), (1, 3)],
            colors: None,
        };
        assert!(build_alpha(&d, &["a", "b"], &[]).is_err());
        assert_eq!(
            build_alpha(&CrossingDiagram::empty(1), &[], &[]).unwrap(),
            Formula::True
        );
        let f = build_alpha(&d, &["a", "b", "c", "d"], &["x", "y"]).unwrap();
        assert_eq!(free_variables(&f).unwrap().len(), 6);
    }

    #[test]
    fn theta_free_variables() {
        let f = theta_1page(4, &["!U", "!a", "!b"]).unwrap();
        let free = free_variables(&f).unwrap();
        assert_eq!(free.keys().cloned().collect::<Vec<_>>(), ["!U", "!a", "!b"]);
        assert!(theta_1page(3, &["!U"]).is_err());
    }
}
