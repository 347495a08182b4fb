//! Built-in shortcuts for library subformulas.
//!
//! A subformula that is α-equivalent to one of the templates below (with
//! `!`-names as holes) is evaluated by a direct graph algorithm with the
//! same meaning. The agreement tests in this module pin each shortcut to
//! its formula.

use crate::graph::{
    is_minor, is_outerplanar, is_planar, is_simple_cycle, isthmuses_within, named,
    simple_cycles_within, EdgeSet, Graph, VertexSet,
};
use crate::mso::book::{
    cactus, chords_on_cycles, chords_through_crossings, isthmus_edges, no_crossing_paths,
    page_outerplanar, pieces_do_not_cross, PathRule,
};
use crate::mso::build::{cycle, minor_h, outerplanar_f, planar_f, Namer};
use crate::mso::{relativize, Formula};
use crate::pagechar::{
    crossing_paths_exist, piece_closure, piece_fits as fits, pieces_cross as alternate,
};
use std::collections::BTreeMap;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Intrinsic {
    Planar,
    Outerplanar,
    /// `()`: the graph has the given small graph as a minor.
    Minor(SmallMinor),
    /// `(F)`: a single simple cycle.
    Cycle,
    /// `(U a b)` or `(U a b z)`: induced subgraph on `U` plus the named
    /// vertices is outerplanar.
    InducedOuterplanar(usize),
    /// `(X)`: the subgraph formed by the edges is outerplanar.
    EdgesOuterplanar,
    /// `(X)`: every edge on exactly one cycle inside `X`.
    Cactus,
    /// `(B C)`: no cycle inside `B ∪ C` uses a `B` edge.
    Isthmus,
    /// `(I C)`.
    ChordsOnCycles,
    /// `(C I)`.
    NoCrossingPaths(PathRule),
    /// `(I C N)`.
    ChordsThroughCrossings,
    /// `(I C N)`.
    PiecesDoNotCross,
}

/// Forbidden minors of planar and outerplanar graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SmallMinor {
    K4,
    K5,
    K23,
    K33,
}

impl SmallMinor {
    pub fn graph(self) -> Graph {
        match self {
            SmallMinor::K4 => named::complete(4),
            SmallMinor::K5 => named::complete(5),
            SmallMinor::K23 => named::complete_bipartite(2, 3),
            SmallMinor::K33 => named::complete_bipartite(3, 3),
        }
    }
}

pub(super) struct Template {
    pub kind: Intrinsic,
    pub formula: Formula,
    pub holes: Vec<&'static str>,
    pub size: usize,
}

pub(super) fn size(f: &Formula) -> usize {
    1 + match f {
        Formula::Not(g) => size(g),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().map(size).sum(),
        Formula::Implies(a, b) => size(a) + size(b),
        Formula::Quant { body, .. } | Formula::Interpreted { body, .. } => size(body),
        _ => 0,
    }
}

pub(super) fn templates() -> &'static [Template] {
    static CELL: OnceLock<Vec<Template>> = OnceLock::new();
    CELL.get_or_init(|| {
        let nm = &mut Namer::new();
        let outer = outerplanar_f(nm);
        let mut out = vec![
            (Intrinsic::Planar, planar_f(nm), vec![]),
            (Intrinsic::Outerplanar, outer.clone(), vec![]),
            (Intrinsic::Cycle, cycle(nm, "!F"), vec!["!F"]),
            (
                Intrinsic::Minor(SmallMinor::K4),
                minor_h(nm, &SmallMinor::K4.graph()),
                vec![],
            ),
            (
                Intrinsic::Minor(SmallMinor::K5),
                minor_h(nm, &SmallMinor::K5.graph()),
                vec![],
            ),
            (
                Intrinsic::Minor(SmallMinor::K23),
                minor_h(nm, &SmallMinor::K23.graph()),
                vec![],
            ),
            (
                Intrinsic::Minor(SmallMinor::K33),
                minor_h(nm, &SmallMinor::K33.graph()),
                vec![],
            ),
            (
                Intrinsic::InducedOuterplanar(2),
                relativize(&outer, "!U", &["!a", "!b"]).expect("fresh"),
                vec!["!U", "!a", "!b"],
            ),
            (
                Intrinsic::InducedOuterplanar(3),
                relativize(&outer, "!U", &["!a", "!b", "!z"]).expect("fresh"),
                vec!["!U", "!a", "!b", "!z"],
            ),
            (
                Intrinsic::EdgesOuterplanar,
                page_outerplanar(nm, "!X"),
                vec!["!X"],
            ),
            (Intrinsic::Cactus, cactus(nm, "!X"), vec!["!X"]),
            (
                Intrinsic::Isthmus,
                isthmus_edges(nm, "!B", "!C"),
                vec!["!B", "!C"],
            ),
            (
                Intrinsic::ChordsOnCycles,
                chords_on_cycles(nm, "!I", "!C"),
                vec!["!I", "!C"],
            ),
        ];
        for rule in [PathRule::NotSingleChord, PathRule::AvoidChords] {
            out.push((
                Intrinsic::NoCrossingPaths(rule),
                no_crossing_paths(nm, "!C", "!I", rule),
                vec!["!C", "!I"],
            ));
        }
        out.push((
            Intrinsic::ChordsThroughCrossings,
            chords_through_crossings(nm, "!I", "!C", "!N"),
            vec!["!I", "!C", "!N"],
        ));
        out.push((
            Intrinsic::PiecesDoNotCross,
            pieces_do_not_cross(nm, "!I", "!C", "!N"),
            vec!["!I", "!C", "!N"],
        ));
        out.into_iter()
            .map(|(kind, formula, holes)| Template {
                kind,
                size: size(&formula),
                formula,
                holes,
            })
            .collect()
    })
}

fn same_shape(a: &Formula, b: &Formula) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

/// α-equivalence with holes. `env` pairs template and formula binders,
/// innermost last.
fn alpha(
    t: &Formula,
    f: &Formula,
    env: &mut Vec<(String, String)>,
    holes: &mut BTreeMap<String, String>,
) -> bool {
    let name = |tn: &str,
                fname: &str,
                env: &Vec<(String, String)>,
                holes: &mut BTreeMap<String, String>| {
        if let Some((a, b)) = env.iter().rev().find(|(a, b)| a == tn || b == fname) {
            return a == tn && b == fname;
        }
        if tn.starts_with('!') {
            return match holes.get(tn) {
                Some(prev) => prev == fname,
                None => {
                    holes.insert(tn.to_string(), fname.to_string());
                    true
                }
            };
        }
        tn == fname
    };
    match (t, f) {
        (Formula::True, Formula::True) | (Formula::False, Formula::False) => true,
        (Formula::Eq(a, b), Formula::Eq(c, d))
        | (Formula::In(a, b), Formula::In(c, d))
        | (Formula::Inc(a, b), Formula::Inc(c, d)) => {
            name(a, c, env, holes) && name(b, d, env, holes)
        }
        (Formula::Not(a), Formula::Not(b)) => alpha(a, b, env, holes),
        (Formula::And(xs), Formula::And(ys)) | (Formula::Or(xs), Formula::Or(ys)) => {
            xs.len() == ys.len()
                && xs
                    .iter()
                    .zip(ys)
                    .all(|(x, y)| same_shape(x, y) && alpha(x, y, env, holes))
        }
        (Formula::Implies(a, b), Formula::Implies(c, d)) => {
            alpha(a, c, env, holes) && alpha(b, d, env, holes)
        }
        (
            Formula::Quant {
                q: q1,
                sort: s1,
                var: v1,
                body: b1,
            },
            Formula::Quant {
                q: q2,
                sort: s2,
                var: v2,
                body: b2,
            },
        ) => {
            if q1 != q2 || s1 != s2 {
                return false;
            }
            env.push((v1.clone(), v2.clone()));
            let ok = alpha(b1, b2, env, holes);
            env.pop();
            ok
        }
        _ => false,
    }
}

/// The shortcut for `f`, with the formula names filling its holes.
pub(super) fn match_intrinsic(f: &Formula, f_size: usize) -> Option<(Intrinsic, Vec<String>)> {
    for t in templates() {
        if t.size != f_size || !same_shape(&t.formula, f) {
            continue;
        }
        let mut holes = BTreeMap::new();
        if alpha(&t.formula, f, &mut Vec::new(), &mut holes) {
            let args = t
                .holes
                .iter()
                .map(|h| holes.get(*h).cloned())
                .collect::<Option<Vec<_>>>()?;
            return Some((t.kind, args));
        }
    }
    None
}

fn vs(x: u128) -> VertexSet {
    VertexSet(x as u64)
}

fn es(x: u128) -> EdgeSet {
    EdgeSet(x)
}

/// Evaluates a shortcut on raw argument values (in hole order).
pub fn eval_intrinsic(kind: Intrinsic, g: &Graph, args: &[u128]) -> bool {
    match kind {
        Intrinsic::Planar => is_planar(g),
        Intrinsic::Outerplanar => is_outerplanar(g),
        Intrinsic::Minor(h) => is_minor(g, &h.graph()),
        Intrinsic::Cycle => is_simple_cycle(g, es(args[0])),
        Intrinsic::InducedOuterplanar(_) => {
            let set = args[1..]
                .iter()
                .fold(vs(args[0]), |acc, &v| acc.with(v as usize));
            is_outerplanar(&g.induced_subgraph(set).0)
        }
        Intrinsic::EdgesOuterplanar => is_outerplanar(&g.edge_subgraph(es(args[0]))),
        Intrinsic::Cactus => {
            let x = es(args[0]);
            let cycles = simple_cycles_within(g, x);
            let covered = cycles.iter().fold(EdgeSet::empty(), |acc, &c| acc.union(c));
            covered == x
                && cycles
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| cycles[i + 1..].iter().all(|&d| c.is_disjoint(d)))
        }
        Intrinsic::Isthmus => {
            let (b, c) = (es(args[0]), es(args[1]));
            b.is_subset(isthmuses_within(g, b.union(c)))
        }
        Intrinsic::ChordsOnCycles => {
            let (i, c) = (es(args[0]), es(args[1]));
            let cycles = simple_cycles_within(g, c);
            i.iter().all(|e| {
                let ends = g.endpoints(EdgeSet::singleton(e));
                cycles.iter().any(|&cy| ends.is_subset(g.endpoints(cy)))
            })
        }
        Intrinsic::NoCrossingPaths(rule) => {
            let (c, i) = (es(args[0]), es(args[1]));
            simple_cycles_within(g, c)
                .into_iter()
                .all(|cy| !crossing_paths_exist(g, cy, i, rule))
        }
        Intrinsic::ChordsThroughCrossings => {
            let (i, c, n) = (es(args[0]), es(args[1]), vs(args[2]));
            let cycles = simple_cycles_within(g, c);
            i.iter().all(|e| {
                let p = piece_closure(g, e, n);
                cycles.iter().any(|&cy| fits(g, p, cy, n))
            })
        }
        Intrinsic::PiecesDoNotCross => {
            let (i, c, n) = (es(args[0]), es(args[1]), vs(args[2]));
            let cycles = simple_cycles_within(g, c);
            let pieces: Vec<EdgeSet> = i.iter().map(|e| piece_closure(g, e, n)).collect();
            pieces.iter().enumerate().all(|(x, &p)| {
                pieces.iter().skip(x + 1).all(|&q| {
                    !p.is_disjoint(q)
                        || !cycles.iter().any(|&cy| {
                            fits(g, p, cy, n) && fits(g, q, cy, n) && alternate(g, p, q, cy)
                        })
                })
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::{eval_naive, Assignment, EvalBudget, Value};
    use crate::corpus::random_graph;
    use crate::mso::{check_sorts, Sort};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_value(rng: &mut StdRng, g: &Graph, sort: Sort) -> Option<Value> {
        Some(match sort {
            Sort::Vertex => {
                Value::Vertex(rng.gen_range(0..g.n().max(1)).min(g.n().checked_sub(1)?))
            }
            Sort::Edge => Value::Edge(rng.gen_range(0..g.m().max(1)).min(g.m().checked_sub(1)?)),
            Sort::VertexSet => Value::VertexSet(VertexSet(rng.gen::<u64>() & g.vertices().0)),
            Sort::EdgeSet => {
                // Dense edge sets make cycle-shaped holes likely.
                let x = rng.gen::<u128>() | rng.gen::<u128>();
                Value::EdgeSet(EdgeSet(x & g.all_edges().0))
            }
        })
    }

    #[test]
    fn every_template_recognises_itself() {
        for t in templates() {
            let (kind, args) =
                match_intrinsic(&t.formula, t.size).expect("template matches itself");
            assert_eq!(kind, t.kind);
            assert_eq!(
                args,
                t.holes.iter().map(|h| h.to_string()).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn shortcuts_agree_with_their_formulas() {
        let mut rng = StdRng::seed_from_u64(7);
        let on = EvalBudget::default();
        let off = EvalBudget::default().without_intrinsics();
        for t in templates() {
            let sorts = check_sorts(&t.formula, &BTreeMap::new(), false).unwrap();
            let mut checked = 0;
            let mut trues = 0;
            while checked < 40 {
                let n = rng.gen_range(1..=5);
                let p = rng.gen_range(0.3..0.9);
                let g = random_graph(&mut rng, n, p);
                let Some(a) = sorts
                    .iter()
                    .map(|(k, &s)| random_value(&mut rng, &g, s).map(|v| (k.clone(), v)))
                    .collect::<Option<Assignment>>()
                else {
                    continue;
                };
                let fast = eval_naive(&g, &t.formula, &a, &on).unwrap();
                let slow = eval_naive(&g, &t.formula, &a, &off).unwrap();
                assert_eq!(fast, slow, "{:?} on {:?} with {:?}", t.kind, g, a);
                checked += 1;
                trues += fast as usize;
            }
            let rare = matches!(
                t.kind,
                Intrinsic::Cycle | Intrinsic::Minor(SmallMinor::K5 | SmallMinor::K33)
            );
            assert!(trues > 0 || rare, "{:?} never true", t.kind);
        }
    }
}
