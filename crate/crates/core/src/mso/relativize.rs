use super::{Formula, MsoError, Quantifier, Sort};
use std::collections::BTreeSet;

fn all_names(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::True | Formula::False => {}
        Formula::Eq(a, b) | Formula::In(a, b) | Formula::Inc(a, b) => {
            out.insert(a.clone());
            out.insert(b.clone());
        }
        Formula::Not(g) => all_names(g, out),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| all_names(g, out)),
        Formula::Implies(a, b) => {
            all_names(a, out);
            all_names(b, out);
        }
        Formula::Quant { var, body, .. } => {
            out.insert(var.clone());
            all_names(body, out);
        }
        Formula::Interpreted {
            args, binds, body, ..
        } => {
            out.extend(args.iter().cloned());
            out.extend(binds.iter().cloned());
            all_names(body, out);
        }
    }
}

fn bound_names(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Not(g) => bound_names(g, out),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| bound_names(g, out)),
        Formula::Implies(a, b) => {
            bound_names(a, out);
            bound_names(b, out);
        }
        Formula::Quant { var, body, .. } => {
            out.insert(var.clone());
            bound_names(body, out);
        }
        Formula::Interpreted { binds, body, .. } => {
            out.extend(binds.iter().cloned());
            bound_names(body, out);
        }
        _ => {}
    }
}

/// Describes the restricted universe: which vertices and edges remain.
struct Domain {
    vertex_guard: Box<dyn Fn(&str) -> Formula>,
    edge_guard: Box<dyn Fn(&str) -> Formula>,
    elem: String,
}

impl Domain {
    fn rewrite(&self, f: &Formula) -> Result<Formula, MsoError> {
        Ok(match f {
            Formula::Not(g) => Formula::not(self.rewrite(g)?),
            Formula::And(gs) => Formula::And(
                gs.iter()
                    .map(|g| self.rewrite(g))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Or(gs) => Formula::Or(
                gs.iter()
                    .map(|g| self.rewrite(g))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Implies(a, b) => Formula::implies(self.rewrite(a)?, self.rewrite(b)?),
            Formula::Quant { q, sort, var, body } => {
                let guard = match sort {
                    Sort::Vertex => (self.vertex_guard)(var),
                    Sort::Edge => (self.edge_guard)(var),
                    Sort::VertexSet => Formula::forall(
                        Sort::Vertex,
                        &self.elem,
                        Formula::implies(
                            Formula::mem(&self.elem, var),
                            (self.vertex_guard)(&self.elem),
                        ),
                    ),
                    Sort::EdgeSet => Formula::forall(
                        Sort::Edge,
                        &self.elem,
                        Formula::implies(
                            Formula::mem(&self.elem, var),
                            (self.edge_guard)(&self.elem),
                        ),
                    ),
                };
                let body = self.rewrite(body)?;
                let body = match q {
                    Quantifier::Exists => Formula::And(vec![guard, body]),
                    Quantifier::Forall => Formula::implies(guard, body),
                };
                Formula::quant(*q, *sort, var, body)
            }
            Formula::Interpreted { .. } => {
                return Err(MsoError::Arity("cannot relativize a transform node".into()))
            }
            atom => atom.clone(),
        })
    }
}

fn fresh(taken: &BTreeSet<String>, stem: &str) -> String {
    (0..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded supply")
}

/// Restricts every quantifier of `f` to the vertices in `vs` or `extra` and
/// to the edges with both endpoints among them. Set quantifiers range over
/// subsets of that universe.
pub fn relativize(f: &Formula, vs: &str, extra: &[&str]) -> Result<Formula, MsoError> {
    let mut bound = BTreeSet::new();
    bound_names(f, &mut bound);
    for name in std::iter::once(vs).chain(extra.iter().copied()) {
        if bound.contains(name) {
            return Err(MsoError::Capture(name.to_string()));
        }
    }
    let mut taken = BTreeSet::new();
    all_names(f, &mut taken);
    taken.insert(vs.to_string());
    taken.extend(extra.iter().map(|s| s.to_string()));
    let elem = fresh(&taken, "rx");
    taken.insert(elem.clone());
    let end = fresh(&taken, "ry");

    let vs = vs.to_string();
    let extra: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
    let vguard = move |x: &str| {
        Formula::or(
            std::iter::once(Formula::mem(x, &vs)).chain(extra.iter().map(|a| Formula::eq(x, a))),
        )
    };
    let vguard2 = vguard.clone();
    let edge_guard = move |e: &str| {
        Formula::forall(
            Sort::Vertex,
            &end,
            Formula::implies(Formula::inc(e, &end), vguard2(&end)),
        )
    };
    let d = Domain {
        vertex_guard: Box::new(vguard),
        edge_guard: Box::new(edge_guard),
        elem,
    };
    d.rewrite(f)
}

/// Restricts `f` to the subgraph formed by the edge set `es`: edges in `es`
/// and the vertices they touch.
pub fn relativize_edges(f: &Formula, es: &str) -> Result<Formula, MsoError> {
    let mut bound = BTreeSet::new();
    bound_names(f, &mut bound);
    if bound.contains(es) {
        return Err(MsoError::Capture(es.to_string()));
    }
    let mut taken = BTreeSet::new();
    all_names(f, &mut taken);
    taken.insert(es.to_string());
    let elem = fresh(&taken, "rx");
    taken.insert(elem.clone());
    let witness = fresh(&taken, "ry");
    let es1 = es.to_string();
    let es2 = es.to_string();
    let d = Domain {
        vertex_guard: Box::new(move |x: &str| {
            Formula::exists(
                Sort::Edge,
                &witness,
                Formula::And(vec![
                    Formula::mem(&witness, &es1),
                    Formula::inc(&witness, x),
                ]),
            )
        }),
        edge_guard: Box::new(move |e: &str| Formula::mem(e, &es2)),
        elem,
    };
    d.rewrite(f)
}
